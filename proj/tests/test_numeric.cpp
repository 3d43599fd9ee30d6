#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cslab/numeric.hpp"

#include <cstdint>
#include <map>

using namespace cslab;

namespace {

// hand-rolled generator so property sweeps are reproducible
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rational random_rational(std::uint64_t i) {
    std::int64_t num = static_cast<std::int64_t>(mix(i) % 2001) - 1000;
    std::int64_t den = static_cast<std::int64_t>(mix(i * 31 + 7) % 999) + 1;
    return Rational(Int(num), Int(den));
}

}  // namespace

TEST_CASE("pairing matches the closed form on small arguments") {
    CHECK(pair_index(0, 0) == 0);
    CHECK(pair_index(1, 0) == 1);
    CHECK(pair_index(0, 1) == 2);
    CHECK(pair_index(2, 0) == 3);
    CHECK(pair_index(1, 1) == 4);
    CHECK(pair_index(0, 2) == 5);
}

TEST_CASE("pairing is a bijection on an initial segment") {
    // brute-force oracle: every p below the bound is hit exactly once
    std::map<Natural, std::pair<Natural, Natural>> seen;
    for (Natural n = 0; n < 64; ++n) {
        for (Natural k = 0; k < 64; ++k) {
            auto p = pair_index(n, k);
            CHECK(seen.emplace(p, std::make_pair(n, k)).second);
        }
    }
    for (Natural p = 0; p < 2016; ++p) {  // pairs with n+k < 62 are all covered
        REQUIRE(seen.count(p) == 1);
        auto [n, k] = unpair_index(p);
        CHECK(seen[p] == std::make_pair(n, k));
    }
}

TEST_CASE("unpair inverts pair") {
    CHECK(unpair_index(0) == std::make_pair(Natural{0}, Natural{0}));
    CHECK(unpair_index(2) == std::make_pair(Natural{0}, Natural{1}));
    CHECK(unpair_index(4) == std::make_pair(Natural{1}, Natural{1}));
    for (Natural p = 0; p < 70000; ++p) {
        auto [n, k] = unpair_index(p);
        CHECK(pair_index(n, k) == p);
    }
}

TEST_CASE("pairing agrees with the standard Cantor form") {
    for (Natural n = 0; n < 40; ++n) {
        for (Natural k = 0; k < 40; ++k) {
            Natural cantor = (n + k) * (n + k + 1) / 2 + k;
            CHECK(pair_index(n, k) == cantor);
        }
    }
}

TEST_CASE("dyadic steps") {
    CHECK(dyadic(0) == Rational(1));
    CHECK(dyadic(3) == Rational(1, 8));
    CHECK(dyadic(10) == Rational(1, 1024));
    CHECK(pow2(5) == Rational(32));
    CHECK(pow2(-2) == Rational(1, 4));
}

TEST_CASE("rational arithmetic satisfies field laws on random triples") {
    for (std::uint64_t i = 0; i < 500; ++i) {
        Rational a = random_rational(3 * i);
        Rational b = random_rational(3 * i + 1);
        Rational c = random_rational(3 * i + 2);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        if (a <= b && b <= a) CHECK(a == b);
    }
}

TEST_CASE("canonical form after arithmetic") {
    Rational q(Int(4), Int(8));
    CHECK(numerator(q) == 1);
    CHECK(denominator(q) == 2);
    Rational r = Rational(Int(-2), Int(6)) + Rational(Int(1), Int(3));
    CHECK(numerator(r) == 0);
    CHECK(denominator(r) == 1);
    Rational q2 = Rational(3) / Rational(-9);  // sign normalizes to the numerator
    CHECK(numerator(q2) == -1);
    CHECK(denominator(q2) == 3);
}

TEST_CASE("sqrt bounds") {
    auto exact = sqrt_bounds(Rational(9, 16), 40);
    CHECK(exact.exact);
    CHECK(exact.lo == Rational(3, 4));
    auto rough = sqrt_bounds(Rational(2), 40);
    CHECK_FALSE(rough.exact);
    CHECK(rough.width() <= dyadic(40));
    CHECK(rough.lo * rough.lo <= 2);
    CHECK(rough.hi * rough.hi >= 2);
    CHECK(sqrt_bounds(Rational(0), 40).exact);
}

TEST_CASE("decimal rendering is fixed-width and deterministic") {
    CHECK(to_decimal(Rational(1, 4), 12) == "0.250000000000");
    CHECK(to_decimal(Rational(0), 12) == "0.000000000000");
    CHECK(to_decimal(Rational(-3, 4), 2) == "-0.75");
    CHECK(to_decimal(Rational(1, 3), 6) == "0.333333");
    CHECK(to_decimal(Rational(2, 3), 6) == "0.666667");
    auto s2 = sqrt_bounds(Rational(2), 60);
    CHECK(to_decimal(s2.mid() / 4, 12) == "0.353553390593");
}

TEST_CASE("rational literals parse") {
    CHECK(rational_from_string("3/4") == Rational(3, 4));
    CHECK(rational_from_string("-1/8") == Rational(-1, 8));
    CHECK(rational_from_string("7") == Rational(7));
    CHECK(rational_from_string("0.25") == Rational(1, 4));
    CHECK(rational_from_string("-0.5") == Rational(-1, 2));
    CHECK_THROWS_AS((void)rational_from_string("x/y"), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cslab/constructions.hpp"
#include "cslab/creal.hpp"
#include "cslab/schedule.hpp"

#include <cstdint>

using namespace cslab;

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

SubjectTrace trace_of(Natural horizon, std::vector<ScheduleEvent> events) {
    auto v = validate_schedule(horizon, std::move(events));
    REQUIRE(v.ok());
    return SubjectTrace(std::move(*v.schedule));
}

// independent oracle: partial sums of the dyadic embedding summed directly
Rational embed_partial_sum(const std::vector<Natural>& prefix, Natural tail_term, Natural terms) {
    auto term = [&](Natural i) { return i <= prefix.size() ? prefix[i - 1] : tail_term; };
    Rational sum = 0;
    for (Natural j = 1; j < term(1); ++j) sum += dyadic(j);
    Natural expo = term(1);
    for (Natural m = 2; m <= terms; ++m) {
        expo += term(m);
        sum += dyadic(expo);
    }
    return sum;
}

}  // namespace

TEST_CASE("approx on constants and frozen schedule reals") {
    CHECK(CReal::constant(0).approx(20) == Rational(0));
    auto t = trace_of(8, {{3, {"A", JudgmentKind::Affirm}}});
    CReal r = brouwer1948_r(t, "A");
    CHECK(r.approx(5) == Rational(1, 8));  // constant 1/8 from index 2
}

TEST_CASE("approx raises HorizonExhausted past an open trace") {
    auto t = trace_of(4, {});
    CReal r = brouwer1948_r(t, "A");
    CHECK(r.approx(2) == Rational(0));
    CHECK_THROWS_AS((void)r.approx(30), HorizonError);
}

TEST_CASE("measurably_less certifies a frozen gap") {
    auto t = trace_of(10, {{3, {"A", JudgmentKind::Affirm}}});
    CReal zero = CReal::constant(0);
    CReal r = brouwer1948_r(t, "A");
    Verdict v = measurably_less(zero, r, 10);
    REQUIRE(v.established());
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->witnessed_gap == Rational(1, 8));
    // the certified ideal gap is below the witnessed one
    CHECK(dyadic(v.certificate->gap_exponent) < Rational(1, 8));
    CHECK_FALSE(measurably_less(r, zero, 10).established());
}

TEST_CASE("equal reals are never apart; empty schedules stay unknown") {
    CReal zero = CReal::constant(0);
    CHECK(apart(zero, CReal::constant(0), 12).unknown());
    auto t = trace_of(10, {});
    Verdict v = apart(zero, brouwer1948_r(t, "A"), 10);
    CHECK(v.unknown());
    CHECK(v.depth == 10);
}

TEST_CASE("apart reports the winning side") {
    auto affirm = trace_of(10, {{3, {"A", JudgmentKind::Affirm}}});
    auto refute = trace_of(10, {{2, {"A", JudgmentKind::Refute}}});
    CReal zero = CReal::constant(0);
    Verdict right = apart(zero, brouwer1948_r(affirm, "A"), 10);
    REQUIRE(right.established());
    CHECK(right.side == ApartSide::Right);
    Verdict left = apart(zero, brouwer1948_r(refute, "A"), 10);
    REQUIRE(left.established());
    CHECK(left.side == ApartSide::Left);
    CHECK(left.certificate->witnessed_gap == Rational(1, 4));
}

TEST_CASE("coincide_up_to is a precision check") {
    CReal zero = CReal::constant(0);
    CHECK(coincide_up_to(zero, CReal::constant(0), 20));
    auto t = trace_of(10, {{3, {"A", JudgmentKind::Affirm}}});
    CHECK(coincide_up_to(brouwer1948_r(t, "A"), CReal::constant(Rational(1, 8)), 20));
    CHECK_FALSE(coincide_up_to(zero, CReal::constant(Rational(1, 8)), 4));
}

TEST_CASE("apartness excludes coincidence beyond the certificate exponent") {
    auto t = trace_of(10, {{2, {"A", JudgmentKind::Refute}}});
    CReal zero = CReal::constant(0);
    CReal r = brouwer1948_r(t, "A");
    Verdict v = apart(zero, r, 10);
    REQUIRE(v.established());
    for (unsigned p = v.certificate->gap_exponent + 1; p < v.certificate->gap_exponent + 10; ++p) {
        CHECK_FALSE(coincide_up_to(zero, r, p));
    }
}

TEST_CASE("dyadic embedding hits the closed-form values") {
    // geometric-series oracles: sum_{m>=2} 2^{-m} = 1/2;
    // 1/2 + sum_{m>=2} 2^{-(m+1)} = 3/4; 2^{-3}/(1 - 1/4) = 1/6
    CReal half = dyadic_embed_prefix({1});
    CHECK(abs(half.approx(10) - Rational(1, 2)) <= dyadic(10));
    CHECK(abs(half.approx(40) - Rational(1, 2)) <= dyadic(40));

    CReal three_quarters = dyadic_embed_prefix({2});
    CHECK(abs(three_quarters.approx(40) - Rational(3, 4)) <= dyadic(40));
    // independent 40-term partial-sum oracle
    CHECK(three_quarters.at(39) == embed_partial_sum({2}, 1, 40));

    CReal sixth = dyadic_embed(
        [](Natural i) { return i == 1 ? Natural{1} : Natural{2}; }, "one-sixth");
    CHECK(abs(sixth.approx(40) - Rational(1, 6)) <= dyadic(40));
}

TEST_CASE("dyadic embedding rejects zero terms") {
    CReal bad = dyadic_embed([](Natural) { return Natural{0}; });
    CHECK_THROWS_AS((void)bad.at(0), std::invalid_argument);
}

TEST_CASE("embedding monotonicity via apart certificates") {
    // raising a_1 raises the value; raising a later term lowers it
    CReal base = dyadic_embed_prefix({2, 3, 1, 2});
    CReal bigger_a1 = dyadic_embed_prefix({3, 3, 1, 2});
    CReal bigger_a3 = dyadic_embed_prefix({2, 3, 2, 2});
    Verdict up = apart(base, bigger_a1, 48);
    REQUIRE(up.established());
    CHECK(up.side == ApartSide::Right);
    Verdict down = apart(base, bigger_a3, 48);
    REQUIRE(down.established());
    CHECK(down.side == ApartSide::Left);
}

TEST_CASE("modulus soundness sampled at random index pairs") {
    auto t = trace_of(10, {{4, {"A", JudgmentKind::Refute}}});
    std::vector<CReal> fixtures{CReal::constant(Rational(3, 7)), dyadic_embed_prefix({1, 2, 2}),
                                brouwer1948_r(t, "A")};
    for (const auto& x : fixtures) {
        for (std::uint64_t s = 0; s < 1000; ++s) {
            unsigned p = mix(s) % 16;
            Natural n0 = x.modulus_index(p);
            Natural i = n0 + mix(s * 2 + 1) % 150;
            Natural j = n0 + mix(s * 2 + 2) % 150;
            CHECK(abs(x.at(i) - x.at(j)) <= dyadic(p));
        }
    }
}

TEST_CASE("pseudo-order laws hold at the verdict level on fixtures") {
    auto affirm = trace_of(10, {{3, {"A", JudgmentKind::Affirm}}});
    auto refute = trace_of(10, {{2, {"A", JudgmentKind::Refute}}});
    auto open_trace = trace_of(10, {});
    std::vector<CReal> fixtures{CReal::constant(0),
                                CReal::constant(Rational(1, 8)),
                                CReal::constant(Rational(-1, 4)),
                                CReal::constant(Rational(1, 16)),
                                brouwer1948_r(affirm, "A"),
                                brouwer1948_r(refute, "A"),
                                brouwer1948_r(open_trace, "A"),
                                dyadic_embed_prefix({1})};
    const Natural depth = 10;
    for (const auto& x : fixtures) {
        for (const auto& y : fixtures) {
            Verdict xy = measurably_less(x, y, depth);
            if (!xy.established()) continue;
            // asymmetry
            CHECK_FALSE(measurably_less(y, x, depth).established());
            // transitivity of established verdicts
            for (const auto& z : fixtures) {
                Verdict yz = measurably_less(y, z, depth);
                if (yz.established()) CHECK(measurably_less(x, z, depth).established());
            }
            // cotransitivity instances at a slightly deeper budget
            for (const auto& z : fixtures) {
                bool either = measurably_less(x, z, depth).established() ||
                              measurably_less(z, y, depth).established();
                CHECK(either);
            }
        }
    }
}

TEST_CASE("negative relations are hypotheses, never established") {
    auto t = trace_of(10, {{3, {"A", JudgmentKind::Affirm}}});
    CReal zero = CReal::constant(0);
    CReal r = brouwer1948_r(t, "A");
    Verdict ok = check_negative_hypothesis(NegativeRelation::VirtualLess, zero, r, 10);
    CHECK(ok.unknown());  // consistent: r really is above zero
    Verdict bad = check_negative_hypothesis(NegativeRelation::VirtualLess, r, zero, 10);
    CHECK(bad.refuted());  // r < 0 contradicted by the certificate
    Verdict eq = check_negative_hypothesis(NegativeRelation::Coincide, zero, r, 10);
    CHECK(eq.refuted());
    CHECK(check_negative_hypothesis(NegativeRelation::Coincide, zero, zero, 10).unknown());
}

TEST_CASE("positive convergence locates the cutoff") {
    std::vector<CReal> seq;
    for (Natural m = 1; m <= 12; ++m) seq.push_back(CReal::constant(dyadic(m)));
    CReal zero = CReal::constant(0);
    Verdict v = converges_positively(seq, zero, 3, 12);
    REQUIRE(v.established());
    CHECK(v.depth == 4);  // 2^{-m} < 1/8 from the fourth member on

    std::vector<CReal> constant(6, CReal::constant(Rational(5, 9)));
    Verdict c = converges_positively(constant, CReal::constant(Rational(5, 9)), 3, 6);
    REQUIRE(c.established());
    CHECK(c.depth == 0);
}

TEST_CASE("alternating sequences are flagged NonCauchy") {
    std::vector<CReal> seq;
    for (Natural m = 0; m < 10; ++m) seq.push_back(CReal::constant(m % 2));
    Verdict v = converges_positively(seq, CReal::constant(0), 3, 10);
    CHECK(v.unknown());
    CHECK(v.note == "NonCauchy");
}

TEST_CASE("negative convergence surrogate") {
    CReal zero = CReal::constant(0);
    std::vector<CReal> ones(11, CReal::constant(1));
    Verdict v = negative_convergence_check(ones, zero, 2, 10);
    REQUIRE(v.refuted());
    CHECK(v.witness_indices.size() == 10);

    std::vector<CReal> halving;
    for (Natural m = 1; m <= 10; ++m) halving.push_back(CReal::constant(dyadic(m)));
    for (Natural p = 1; p <= 5; ++p) {
        // only the p-1 leading members exceed 2^{-p}, below the bulk threshold
        CHECK(negative_convergence_check(halving, zero, p, 10).unknown());
    }
    CHECK(negative_convergence_check({}, zero, 2, 10).unknown());
    CHECK(negative_convergence_check({}, zero, 2, 10).depth == 0);
}

TEST_CASE("depth beyond the available horizon is an error") {
    auto t = trace_of(4, {});
    CReal r = brouwer1948_r(t, "A");
    CHECK_THROWS_AS((void)measurably_less(CReal::constant(0), r, 9), HorizonError);
}

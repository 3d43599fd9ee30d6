#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace cslab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Natural = std::uint64_t;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// 2^e as an exact rational, e may be negative.
Rational pow2(long e);

/// 2^{-m}, the ubiquitous dyadic step.
inline Rational dyadic(Natural m) { return pow2(-static_cast<long>(m)); }

Rational abs(const Rational& q);

/// j(n,k) = ((n+k)^2 + n + 3k)/2, a bijection NxN -> N.
Natural pair_index(Natural n, Natural k);

/// Inverse of pair_index: pair_index(unpair_index(p)) == p.
std::pair<Natural, Natural> unpair_index(Natural p);

/// Floor square root of a nonnegative integer.
Int isqrt(const Int& n);

struct Bounds {
    Rational lo;
    Rational hi;
    bool exact;  // lo == hi, the radicand is a perfect rational square

    Rational mid() const { return (lo + hi) / 2; }
    Rational width() const { return hi - lo; }
};

/// Encloses sqrt(q) in a rational interval of width <= 2^{-precision_exp}.
/// Exact (width 0) when q is the square of a rational. q must be >= 0.
Bounds sqrt_bounds(const Rational& q, unsigned precision_exp);

/// Fixed-point decimal rendering with the given number of fractional
/// digits, round half away from zero. Locale-independent.
std::string to_decimal(const Rational& q, unsigned digits);

std::string to_string(const Rational& q);

/// Parses "a/b" or "a" (optionally signed); throws std::invalid_argument.
Rational rational_from_string(const std::string& text);

}  // namespace cslab

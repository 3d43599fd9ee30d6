#include "cslab/numeric.hpp"

#include <sstream>

namespace cslab {

Rational pow2(long e) {
    Int one = 1;
    if (e >= 0) return Rational(one << e, 1);
    return Rational(one, one << (-e));
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Natural pair_index(Natural n, Natural k) {
    // ((n+k)^2 + n + 3k) / 2; intermediate kept in 128 bits so the full
    // uint64 diagonal range is safe.
    unsigned __int128 s = static_cast<unsigned __int128>(n) + k;
    unsigned __int128 v = s * s + n + static_cast<unsigned __int128>(3) * k;
    return static_cast<Natural>(v / 2);
}

std::pair<Natural, Natural> unpair_index(Natural p) {
    // p = d(d+1)/2 + k with d = n+k; recover the diagonal by integer sqrt.
    unsigned __int128 t = static_cast<unsigned __int128>(8) * p + 1;
    unsigned __int128 r = 0;
    {
        // floor sqrt of a 128-bit value by digit-by-digit method
        unsigned __int128 bit = static_cast<unsigned __int128>(1) << 126;
        unsigned __int128 x = t;
        while (bit > x) bit >>= 2;
        while (bit != 0) {
            if (x >= r + bit) {
                x -= r + bit;
                r = (r >> 1) + bit;
            } else {
                r >>= 1;
            }
            bit >>= 2;
        }
    }
    Natural d = static_cast<Natural>((r - 1) / 2);
    Natural base = static_cast<Natural>((static_cast<unsigned __int128>(d) * (d + 1)) / 2);
    Natural k = p - base;
    return {d - k, k};
}

Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt of negative integer");
    return boost::multiprecision::sqrt(n);
}

Bounds sqrt_bounds(const Rational& q, unsigned precision_exp) {
    if (q < 0) throw std::domain_error("sqrt_bounds of negative rational");
    Int num = numerator(q);
    Int den = denominator(q);
    Int root_num = isqrt(num);
    Int root_den = isqrt(den);
    if (root_num * root_num == num && root_den * root_den == den) {
        Rational v(root_num, root_den);
        return {v, v, true};
    }
    // sqrt(num/den) = sqrt(num*den)/den; scale by 4^p so the enclosing
    // integer bracket is finer than the requested width.
    Int scaled = num * den << (2 * precision_exp);
    Int s = isqrt(scaled);
    Int scale = den << precision_exp;
    return {Rational(s, scale), Rational(s + 1, scale), false};
}

std::string to_decimal(const Rational& q, unsigned digits) {
    Int p10 = 1;
    for (unsigned i = 0; i < digits; ++i) p10 *= 10;
    Int num = numerator(q) * p10 * 2;
    Int den = denominator(q);
    bool neg = num < 0;
    if (neg) num = -num;
    Int scaled = (num / den + 1) / 2;  // round half away from zero
    Int ipart = scaled / p10;
    Int frac = scaled % p10;
    std::string fs = frac.str();
    fs.insert(fs.begin(), digits - fs.size(), '0');
    std::string out = neg && (ipart != 0 || frac != 0) ? "-" : "";
    out += ipart.str();
    if (digits > 0) out += "." + fs;
    return out;
}

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Rational rational_from_string(const std::string& text) {
    try {
        if (auto slash = text.find('/'); slash != std::string::npos) {
            Int num(text.substr(0, slash));
            Int den(text.substr(slash + 1));
            if (den <= 0) throw std::invalid_argument("denominator must be positive");
            return Rational(num, den);
        }
        if (auto dot = text.find('.'); dot != std::string::npos) {
            bool neg = !text.empty() && text[0] == '-';
            std::string ipart = text.substr(neg ? 1 : 0, dot - (neg ? 1 : 0));
            std::string fpart = text.substr(dot + 1);
            Int scale = 1;
            for (std::size_t i = 0; i < fpart.size(); ++i) scale *= 10;
            Int num = Int(ipart.empty() ? "0" : ipart) * scale + Int(fpart.empty() ? "0" : fpart);
            Rational r(num, scale);
            return neg ? Rational(-r) : r;
        }
        return Rational(Int(text), 1);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal '" + text + "'");
    }
}

}  // namespace cslab

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ringelect {

// Absolute time, tick counts, timers and delay values are unbounded: f(k) = 2^k
// outgrows any fixed-width type long before a ring gets interesting.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow2(std::uint64_t exponent)
{
    BigInt r = 1;
    r <<= static_cast<unsigned>(exponent);
    return r;
}

inline BigInt ceil_div(const BigInt& num, const BigInt& den)
{
    BigInt q = num / den;
    if (q * den < num) {
        ++q;
    }
    return q;
}

inline BigInt floor_div(const BigInt& num, const BigInt& den)
{
    BigInt q = num / den;
    if (q * den > num) {
        --q;
    }
    return q;
}

inline BigInt ceil(const Rational& r)
{
    return ceil_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// "num/den" with den omitted when the value is integral.
inline std::string to_fraction_string(const Rational& r)
{
    const BigInt& den = boost::multiprecision::denominator(r);
    if (den == 1) {
        return boost::multiprecision::numerator(r).str();
    }
    return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

/// Decimal rendering rounded half-up to `places` digits.
std::string to_decimal_string(const Rational& r, unsigned places = 6);

/// Parses "n" or "n/d" (d > 0); throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& text);

}  // namespace ringelect

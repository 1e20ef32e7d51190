#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace rotset {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Canonical text form: "p/q" with q > 1, or "p" for integers.
std::string to_string(const Rational& q);

/// Parses "p/q", "p", or a finite decimal such as "-0.125" exactly.
/// Throws ValidationError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Exact rational value of a finite double (every double is dyadic).
Rational from_double(double x);

/// Nearest rational with denominator `denominator`, rounding half away from zero.
Rational round_to_denominator(const Rational& q, std::int64_t denominator);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace rotset

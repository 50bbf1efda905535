#pragma once

// Exact rational scalars and conversions between them and doubles.

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace splitlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q", an integer, or a decimal literal ("0.25", "-1.5e-3")
/// into an exact rational. Throws Error(parse_error) on malformed text.
Rational parse_rational(std::string_view text);

/// Exact value of a finite double (every double is a dyadic rational).
Rational exact_from_double(double x);

/// Recovers a "small" rational from a double: the best continued-fraction
/// approximation with denominator <= max_denominator, provided it rounds
/// back to exactly x. Throws Error(irrational_coefficient) otherwise.
Rational recover_rational(double x, std::int64_t max_denominator = 1000000);

double to_double(const Rational& x);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& x);

/// Shortest decimal that round-trips to x.
std::string format_double(double x);

}  // namespace splitlab

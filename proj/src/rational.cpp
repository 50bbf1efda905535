#include "splitlab/rational.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <limits>
#include <system_error>

#include "splitlab/error.hpp"

namespace splitlab {
namespace {

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::parse_error, "not a number: \"" + std::string(text) + "\"");
}

BigInt pow10(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Decimal literal: [sign] digits [. digits] [(e|E) [sign] digits]
Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  BigInt mantissa = 0;
  long scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      any_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) bad_number(text);
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') bad_number(text);
    std::string_view exp = s.substr(i + 1);
    if (!exp.empty() && exp.front() == '+') exp.remove_prefix(1);
    long e = 0;
    auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), e);
    if (ec != std::errc{} || ptr != exp.data() + exp.size() || exp.empty()) bad_number(text);
    if (e > 4000 || e < -4000) bad_number(text);
    scale += e;
  }
  Rational value = scale >= 0 ? Rational(mantissa * pow10(static_cast<unsigned>(scale)))
                              : Rational(mantissa, pow10(static_cast<unsigned>(-scale)));
  return negative ? Rational(-value) : value;
}

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad_number(whole);
  BigInt r = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) bad_number(whole);
    r = r * 10 + (c - '0');
  }
  return negative ? BigInt(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) bad_number(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const BigInt p = parse_integer(s.substr(0, slash), text);
    const BigInt q = parse_integer(s.substr(slash + 1), text);
    if (q == 0) throw Error(ErrorCode::parse_error, "zero denominator in \"" + std::string(text) + "\"");
    return Rational(p, q);
  }
  return parse_decimal(s);
}

Rational exact_from_double(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::irrational_coefficient, "non-finite value has no exact form");
  }
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double frac = std::frexp(x, &exponent);
  // frac * 2^53 is an integer for every double.
  const auto mantissa = static_cast<long long>(std::ldexp(frac, 53));
  exponent -= 53;
  BigInt num = mantissa;
  if (exponent >= 0) return Rational(num << exponent);
  BigInt den = 1;
  den <<= -exponent;
  return Rational(num, den);
}

Rational recover_rational(double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::irrational_coefficient, "non-finite coefficient");
  }
  // Continued-fraction convergents of the exact binary value.
  const Rational target = exact_from_double(x);
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigInt num = boost::multiprecision::numerator(target);
  BigInt den = boost::multiprecision::denominator(target);
  while (den != 0) {
    BigInt a = num / den;
    if (num < 0 && a * den != num) a -= 1;  // floor
    BigInt p2 = a * p1 + p0;
    BigInt q2 = a * q1 + q0;
    if (q2 > max_denominator) break;
    const Rational candidate(p2, q2);
    if (to_double(candidate) == x) return candidate;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    BigInt r = num - a * den;
    num = den;
    den = r;
  }
  throw Error(ErrorCode::irrational_coefficient,
              "coefficient " + format_double(x) + " has no small-denominator rational form");
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

std::string to_string(const Rational& x) { return x.str(); }

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace splitlab

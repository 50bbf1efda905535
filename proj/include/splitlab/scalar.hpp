#pragma once

// Scalar policy shared by the exact (Rational) and floating (double) paths.
// Exact scalars compare exactly; doubles compare with a 1e-12 relative
// tolerance floored at one.

#include <algorithm>
#include <cmath>

#include "splitlab/rational.hpp"

namespace splitlab {

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr double equality_tolerance = 1e-12;
  static constexpr double violation_tolerance = 1e-10;

  static double ratio(long p, long q) { return static_cast<double>(p) / static_cast<double>(q); }
  static bool is_zero(double x) { return std::abs(x) <= equality_tolerance; }
  static bool equal(double a, double b) {
    return std::abs(a - b) <= equality_tolerance * std::max({1.0, std::abs(a), std::abs(b)});
  }
  static double to_double(double x) { return x; }
  static double violation_tol() { return violation_tolerance; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;

  static Rational ratio(long p, long q) { return Rational(p, q); }
  static bool is_zero(const Rational& x) { return x == 0; }
  static bool equal(const Rational& a, const Rational& b) { return a == b; }
  static double to_double(const Rational& x) { return splitlab::to_double(x); }
  static Rational violation_tol() { return Rational(0); }
};

template <class S>
S ratio(long p, long q) {
  return ScalarTraits<S>::ratio(p, q);
}

template <class S>
bool is_zero(const S& x) {
  return ScalarTraits<S>::is_zero(x);
}

template <class S>
bool approx_equal(const S& a, const S& b) {
  return ScalarTraits<S>::equal(a, b);
}

}  // namespace splitlab

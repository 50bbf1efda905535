#include <doctest.h>

#include <cmath>

#include "splitlab/error.hpp"
#include "splitlab/rational.hpp"

using splitlab::Error;
using splitlab::ErrorCode;
using splitlab::Rational;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::usage_error;
}

}  // namespace

TEST_CASE("fractions, integers and decimals parse exactly") {
  CHECK(splitlab::parse_rational("1/3") == Rational(1, 3));
  CHECK(splitlab::parse_rational("-2/4") == Rational(-1, 2));
  CHECK(splitlab::parse_rational(" 7 ") == Rational(7));
  CHECK(splitlab::parse_rational("0.1") == Rational(1, 10));
  CHECK(splitlab::parse_rational("-0.375") == Rational(-3, 8));
  CHECK(splitlab::parse_rational("1e-3") == Rational(1, 1000));
  CHECK(splitlab::parse_rational("2.5E2") == Rational(250));
  CHECK(splitlab::parse_rational(".5") == Rational(1, 2));
}

TEST_CASE("malformed numbers are parse errors") {
  for (const char* bad : {"", "1/0", "abc", "1.2.3", "1/", "/2", "1e", "--1", "1/2/3"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { splitlab::parse_rational(bad); }) == ErrorCode::parse_error);
  }
}

TEST_CASE("doubles convert to their exact dyadic value") {
  CHECK(splitlab::exact_from_double(0.5) == Rational(1, 2));
  CHECK(splitlab::exact_from_double(-3.0) == Rational(-3));
  CHECK(splitlab::exact_from_double(0.1) != Rational(1, 10));
  CHECK(splitlab::to_double(splitlab::exact_from_double(0.1)) == 0.1);
  CHECK(splitlab::exact_from_double(std::ldexp(1.0, -1000)) * splitlab::exact_from_double(std::ldexp(1.0, 1000)) == 1);
  CHECK(code_of([] { splitlab::exact_from_double(NAN); }) == ErrorCode::irrational_coefficient);
}

TEST_CASE("small rationals are recovered from doubles, irrationals are not") {
  CHECK(splitlab::recover_rational(1.0 / 3.0) == Rational(1, 3));
  CHECK(splitlab::recover_rational(-5.0 / 96.0) == Rational(-5, 96));
  CHECK(splitlab::recover_rational(0.1) == Rational(1, 10));
  CHECK(splitlab::recover_rational(0.0) == Rational(0));
  CHECK(code_of([] { splitlab::recover_rational(std::cbrt(2.0)); }) == ErrorCode::irrational_coefficient);
  CHECK(code_of([] { splitlab::recover_rational(std::sqrt(0.5)); }) == ErrorCode::irrational_coefficient);
}

TEST_CASE("formatting") {
  CHECK(splitlab::to_string(Rational(-5, 96)) == "-5/96");
  CHECK(splitlab::to_string(Rational(4, 2)) == "2");
  CHECK(splitlab::format_double(0.1) == "0.1");
  CHECK(std::stod(splitlab::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

#include "splitlab/scheme.hpp"

namespace splitlab {

namespace {

double rational_to_double(const Rational& x) { return to_double(x); }
Rational double_to_binary(const double& x) { return exact_from_double(x); }
Rational double_to_recovered(const double& x) { return recover_rational(x); }

}  // namespace

Scheme to_float(const RationalScheme& scheme) {
  return convert_scheme<double, Rational>(scheme, rational_to_double);
}

RationalScheme to_exact(const Scheme& scheme, ExactConversion mode) {
  return convert_scheme<Rational, double>(
      scheme, mode == ExactConversion::binary ? double_to_binary : double_to_recovered);
}

std::string_view to_string(Kind kind) { return kind == Kind::velocity ? "velocity" : "position"; }

}  // namespace splitlab

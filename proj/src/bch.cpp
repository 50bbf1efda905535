#include "splitlab/bch.hpp"

#include <vector>

namespace splitlab::bch {

LieElement& LieElement::operator+=(const LieElement& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

LieElement& LieElement::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  LieElement r;
  r[TV] = x[T] * y[V] - x[V] * y[T];
  r[TTV] = x[T] * y[TV] - x[TV] * y[T];
  r[VTV] = x[V] * y[TV] - x[TV] * y[V];
  return r;
}

LieElement bch_product(const LieElement& x, const LieElement& y) {
  const LieElement xy = bracket(x, y);
  LieElement r = x + y;
  r += Rational(1, 2) * xy;
  r += Rational(1, 12) * bracket(x, xy);
  r -= Rational(1, 12) * bracket(y, xy);
  return r;
}

LieElement expand_scheme(const RationalScheme& scheme, GradientFactors gradient) {
  LieElement acc;
  for (const auto& f : operator_word(scheme)) {
    if (f.type == FactorType::drift) {
      acc = bch_product(acc, LieElement::basis(T, f.coef));
    } else if (gradient == GradientFactors::merged) {
      LieElement kick = LieElement::basis(V, f.coef);
      kick[VTV] = f.gradient;
      acc = bch_product(acc, kick);
    } else {
      acc = bch_product(acc, LieElement::basis(V, f.coef));
      if (f.gradient != 0) acc = bch_product(acc, LieElement::basis(VTV, f.gradient));
    }
  }
  return acc;
}

LieElement expand_scheme(const Scheme& scheme, ExactConversion conversion,
                         GradientFactors gradient) {
  return expand_scheme(to_exact(scheme, conversion), gradient);
}

}  // namespace splitlab::bch

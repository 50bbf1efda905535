#pragma once

// Exact Baker-Campbell-Hausdorff arithmetic in the free Lie algebra on two
// generators T, V truncated above total degree 3. The ordered basis is
//
//   T, V, [T,V], [T,[T,V]], [V,[T,V]]     (degrees 1, 1, 2, 3, 3)
//
// Every bracket of four or more generators vanishes; none of them can feed
// back into degrees <= 3, so the five coordinates are exact.

#include <array>
#include <cstddef>

#include "splitlab/rational.hpp"
#include "splitlab/scheme.hpp"

namespace splitlab::bch {

enum Basis : std::size_t { T = 0, V = 1, TV = 2, TTV = 3, VTV = 4 };

class LieElement {
 public:
  LieElement() = default;
  LieElement(Rational t, Rational v, Rational tv = 0, Rational ttv = 0, Rational vtv = 0)
      : c_{std::move(t), std::move(v), std::move(tv), std::move(ttv), std::move(vtv)} {}

  static LieElement basis(Basis b, Rational scale = 1) {
    LieElement e;
    e.c_[b] = std::move(scale);
    return e;
  }

  const Rational& operator[](Basis b) const { return c_[b]; }
  Rational& operator[](Basis b) { return c_[b]; }

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const Rational& s);

  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& s, LieElement a) { return a *= s; }
  friend LieElement operator-(LieElement a) { return a *= Rational(-1); }
  friend bool operator==(const LieElement&, const LieElement&) = default;

  ErrorCoefficients<Rational> coefficients() const { return {c_[T], c_[V], c_[TV], c_[TTV], c_[VTV]}; }

 private:
  std::array<Rational, 5> c_{};
};

/// Bilinear, antisymmetric extension of [T,V] = TV, [T,TV] = TTV,
/// [V,TV] = VTV, with everything of degree > 3 truncated.
LieElement bracket(const LieElement& x, const LieElement& y);

/// log(exp(x) exp(y)) = x + y + [x,y]/2 + [x,[x,y]]/12 - [y,[x,y]]/12.
LieElement bch_product(const LieElement& x, const LieElement& y);

enum class GradientFactors {
  merged,    // exp(v eps V + c eps^3 [V,[T,V]]) as one factor
  separate,  // exp(v eps V) exp(c eps^3 [V,[T,V]])
};

/// log of the scheme's operator product, folded left to right.
LieElement expand_scheme(const RationalScheme& scheme,
                         GradientFactors gradient = GradientFactors::merged);

/// Exact expansion of a float scheme. `recovered` conversion throws
/// IrrationalCoefficient for coefficients without a small rational form.
LieElement expand_scheme(const Scheme& scheme, ExactConversion conversion,
                         GradientFactors gradient = GradientFactors::merged);

}  // namespace splitlab::bch

#pragma once

// Splitting schemes
//
// A velocity-kind scheme with N factor pairs is the operator product
//
//   prod_{i=1..N} exp(t_i eps T) exp(v_i eps V)
//
// read (and applied) left to right; a position-kind scheme is the mirrored
// product prod exp(v_i eps V) exp(t_i eps T). The leading zero coefficient
// (t_1 = 0 for velocity, v_1 = 0 for position) is stored explicitly so that
// index i here is index i of the closed-form sums. Indices in code and in
// the JSON format are 0-based.
//
// Each kick may carry gradient coefficients c: the kick exponent becomes
// v_i eps V + c eps^3 [V,[T,V]].

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "splitlab/error.hpp"
#include "splitlab/scalar.hpp"

namespace splitlab {

enum class Kind { velocity, position };

constexpr Kind mirrored(Kind kind) {
  return kind == Kind::velocity ? Kind::position : Kind::velocity;
}

template <class S>
struct GradientTerm {
  std::size_t index = 0;
  S c{};

  friend bool operator==(const GradientTerm&, const GradientTerm&) = default;
};

template <class S>
class BasicScheme {
 public:
  BasicScheme(Kind kind, std::vector<S> t, std::vector<S> v,
              std::vector<GradientTerm<S>> gradient = {}, std::string label = {})
      : kind_(kind),
        t_(std::move(t)),
        v_(std::move(v)),
        gradient_(std::move(gradient)),
        label_(std::move(label)) {
    if (t_.empty() || t_.size() != v_.size()) {
      throw Error(ErrorCode::invalid_scheme,
                  "t and v must be non-empty and of equal length (got " +
                      std::to_string(t_.size()) + " and " + std::to_string(v_.size()) + ")");
    }
    for (const auto& g : gradient_) {
      if (g.index >= v_.size()) {
        throw Error(ErrorCode::invalid_scheme,
                    "gradient index " + std::to_string(g.index) + " is not a kick position");
      }
    }
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return t_.size(); }
  std::span<const S> t() const noexcept { return t_; }
  std::span<const S> v() const noexcept { return v_; }
  std::span<const GradientTerm<S>> gradient() const noexcept { return gradient_; }
  bool has_gradient() const noexcept { return !gradient_.empty(); }
  const std::string& label() const noexcept { return label_; }

  /// Total gradient coefficient attached to kick `i`.
  S gradient_at(std::size_t i) const {
    S total{};
    for (const auto& g : gradient_) {
      if (g.index == i) total += g.c;
    }
    return total;
  }

  S gradient_total() const {
    S total{};
    for (const auto& g : gradient_) total += g.c;
    return total;
  }

  BasicScheme with_label(std::string label) const {
    BasicScheme copy = *this;
    copy.label_ = std::move(label);
    return copy;
  }

  BasicScheme without_gradient() const { return BasicScheme(kind_, t_, v_, {}, label_); }

  BasicScheme with_gradient(std::vector<GradientTerm<S>> gradient) const {
    return BasicScheme(kind_, t_, v_, std::move(gradient), label_);
  }

  friend bool operator==(const BasicScheme& a, const BasicScheme& b) {
    return a.kind_ == b.kind_ && a.t_ == b.t_ && a.v_ == b.v_ && a.gradient_ == b.gradient_;
  }

 private:
  Kind kind_;
  std::vector<S> t_;
  std::vector<S> v_;
  std::vector<GradientTerm<S>> gradient_;
  std::string label_;
};

using Scheme = BasicScheme<double>;
using RationalScheme = BasicScheme<Rational>;

template <class S>
struct ErrorCoefficients {
  S e_T{};
  S e_V{};
  S e_TV{};
  S e_TTV{};
  S e_VTV{};

  friend bool operator==(const ErrorCoefficients&, const ErrorCoefficients&) = default;
};

/// s has N+1 entries s_0..s_N (s_0 = 0); u has N+1 entries u_1..u_{N+1}
/// stored at u[0]..u[N] with u[N] = 0.
template <class S>
struct PartialSums {
  std::vector<S> s;
  std::vector<S> u;
};

/// Partial sums of the stored t and v sequences, independent of kind.
template <class S>
PartialSums<S> partial_sums(std::span<const S> t, std::span<const S> v) {
  const std::size_t n = t.size();
  PartialSums<S> out;
  out.s.assign(n + 1, S{});
  out.u.assign(n + 1, S{});
  for (std::size_t i = 0; i < n; ++i) out.s[i + 1] = out.s[i] + t[i];
  for (std::size_t i = n; i-- > 0;) out.u[i] = out.u[i + 1] + v[i];
  return out;
}

template <class S>
PartialSums<S> partial_sums(const BasicScheme<S>& scheme) {
  return partial_sums(scheme.t(), scheme.v());
}

namespace detail {

// Coefficients of prod exp(a_i X) exp(b_i Y) over the basis
// {X, Y, [X,Y], [X,[X,Y]], [Y,[X,Y]]}. The sums are the homogeneous forms of
//   sum a_i u_i               = 1/2 e_X e_Y + e_XY
//   1/2 sum a_i (s_i+s_{i-1}) u_i = 1/6 e_X^2 e_Y + 1/2 e_X e_XY + e_XXY
//   1/2 sum a_i u_i^2          = 1/6 e_X e_Y^2 + 1/2 e_Y e_XY - e_YXY
// which reduce to the familiar 1/2, 1/6 constants when e_X = e_Y = 1.
template <class S>
ErrorCoefficients<S> alternating_product_coefficients(std::span<const S> a, std::span<const S> b) {
  const auto ps = partial_sums(a, b);
  S sum_au{}, sum_asu{}, sum_au2{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const S& u = ps.u[i];
    sum_au += a[i] * u;
    sum_asu += a[i] * (ps.s[i + 1] + ps.s[i]) * u;
    sum_au2 += a[i] * u * u;
  }
  ErrorCoefficients<S> ec;
  ec.e_T = ps.s.back();
  ec.e_V = ps.u.front();
  const S half = ratio<S>(1, 2);
  const S sixth = ratio<S>(1, 6);
  ec.e_TV = sum_au - half * ec.e_T * ec.e_V;
  ec.e_TTV = half * sum_asu - sixth * ec.e_T * ec.e_T * ec.e_V - half * ec.e_T * ec.e_TV;
  ec.e_VTV = sixth * ec.e_T * ec.e_V * ec.e_V + half * ec.e_V * ec.e_TV - half * sum_au2;
  return ec;
}

}  // namespace detail

/// Coefficients under the T <-> V interchange.
template <class S>
ErrorCoefficients<S> interchanged(const ErrorCoefficients<S>& ec) {
  return {ec.e_V, ec.e_T, -ec.e_TV, -ec.e_VTV, -ec.e_TTV};
}

enum class GradientInclusion { include, exclude };

template <class S>
ErrorCoefficients<S> error_coefficients(const BasicScheme<S>& scheme,
                                        GradientInclusion gradient = GradientInclusion::include) {
  ErrorCoefficients<S> ec =
      scheme.kind() == Kind::velocity
          ? detail::alternating_product_coefficients(scheme.t(), scheme.v())
          : interchanged(detail::alternating_product_coefficients(scheme.v(), scheme.t()));
  // [V,[T,V]] is central at this order, so gradient terms add directly.
  if (gradient == GradientInclusion::include) ec.e_VTV += scheme.gradient_total();
  return ec;
}

template <class S>
S cube_sum(std::span<const S> x) {
  S total{};
  for (const S& xi : x) total += xi * xi * xi;
  return total;
}

template <class S>
S delta_g(const BasicScheme<S>& scheme) {
  return cube_sum(scheme.t());
}

template <class S>
S delta_g_prime(const BasicScheme<S>& scheme) {
  return cube_sum(scheme.v());
}

/// g = sum_i s_i s_{i-1} (s_i - s_{i-1}) over the drift partial sums.
template <class S>
S g_sum(std::span<const S> t) {
  S s_prev{}, total{};
  for (const S& ti : t) {
    const S s = s_prev + ti;
    total += s * s_prev * ti;
    s_prev = s;
  }
  return total;
}

template <class S>
S g_sum(const BasicScheme<S>& scheme) {
  return g_sum(scheme.t());
}

template <class S>
S g_sum_prime(const BasicScheme<S>& scheme) {
  return g_sum(scheme.v());
}

/// g - (e_T^3 - delta_g)/3, which vanishes identically; for normalized
/// schemes this is the closed form g = (1 - delta_g)/3.
template <class S>
S g_identity_residual(std::span<const S> t) {
  S e = S{};
  for (const S& ti : t) e += ti;
  return g_sum(t) - (e * e * e - cube_sum(t)) / 3;
}

template <class S>
S sum(std::span<const S> x) {
  S total{};
  for (const S& xi : x) total += xi;
  return total;
}

template <class S>
bool is_normalized(const BasicScheme<S>& scheme) {
  return approx_equal(sum(scheme.t()), S(1)) && approx_equal(sum(scheme.v()), S(1));
}

/// True when no drift or kick coefficient is negative.
template <class S>
bool is_forward(const BasicScheme<S>& scheme) {
  for (const S& x : scheme.t())
    if (x < 0 && !is_zero(x)) return false;
  for (const S& x : scheme.v())
    if (x < 0 && !is_zero(x)) return false;
  return true;
}

/// T <-> V interchange: swaps kind and the coefficient sequences. Gradient
/// terms have no image as kick coefficients, so schemes carrying them are
/// rejected.
template <class S>
BasicScheme<S> dual(const BasicScheme<S>& scheme) {
  if (scheme.has_gradient()) {
    throw Error(ErrorCode::precondition_violated,
                "dual is defined for T/V-only schemes; strip gradient terms first");
  }
  return BasicScheme<S>(mirrored(scheme.kind()),
                        std::vector<S>(scheme.v().begin(), scheme.v().end()),
                        std::vector<S>(scheme.t().begin(), scheme.t().end()), {}, scheme.label());
}

enum class FactorType { drift, kick };

template <class S>
struct Factor {
  FactorType type;
  S coef{};
  S gradient{};  // kicks only
};

/// Factors in application order. With `compact`, zero factors are dropped
/// and adjacent factors of the same type are merged.
template <class S>
std::vector<Factor<S>> operator_word(const BasicScheme<S>& scheme, bool compact = false) {
  std::vector<Factor<S>> word;
  word.reserve(2 * scheme.size());
  auto push = [&](Factor<S> f) {
    if (!compact) {
      word.push_back(std::move(f));
      return;
    }
    if (is_zero(f.coef) && is_zero(f.gradient)) return;
    if (!word.empty() && word.back().type == f.type) {
      word.back().coef += f.coef;
      word.back().gradient += f.gradient;
      if (is_zero(word.back().coef) && is_zero(word.back().gradient)) word.pop_back();
      return;
    }
    word.push_back(std::move(f));
  };
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    Factor<S> drift{FactorType::drift, scheme.t()[i], S{}};
    Factor<S> kick{FactorType::kick, scheme.v()[i], scheme.gradient_at(i)};
    if (scheme.kind() == Kind::velocity) {
      push(drift);
      push(kick);
    } else {
      push(kick);
      push(drift);
    }
  }
  return word;
}

/// Palindrome test on the compacted operator word.
template <class S>
bool is_symmetric(const BasicScheme<S>& scheme) {
  const auto word = operator_word(scheme, true);
  for (std::size_t i = 0, j = word.size(); i < j--; ++i) {
    const auto& a = word[i];
    const auto& b = word[j];
    if (a.type != b.type || !approx_equal(a.coef, b.coef) || !approx_equal(a.gradient, b.gradient)) {
      return false;
    }
  }
  return true;
}

/// Same operator product with zero factors removed and adjacent factors of
/// one type merged, re-packed in the scheme's own kind.
template <class S>
BasicScheme<S> prune_zero_factors(const BasicScheme<S>& scheme) {
  const auto word = operator_word(scheme, true);
  const FactorType lead = scheme.kind() == Kind::velocity ? FactorType::drift : FactorType::kick;
  std::vector<S> t, v;
  std::vector<GradientTerm<S>> gradient;
  bool pair_open = false;
  for (const auto& f : word) {
    if (f.type == lead || !pair_open) {
      t.push_back(S{});
      v.push_back(S{});
      pair_open = f.type == lead;
    } else {
      pair_open = false;
    }
    if (f.type == FactorType::drift) {
      t.back() = f.coef;
    } else {
      v.back() = f.coef;
      if (!is_zero(f.gradient)) gradient.push_back({v.size() - 1, f.gradient});
    }
  }
  if (t.empty()) {
    t.push_back(S{});
    v.push_back(S{});
  }
  return BasicScheme<S>(scheme.kind(), std::move(t), std::move(v), std::move(gradient),
                        scheme.label());
}

template <class To, class From>
BasicScheme<To> convert_scheme(const BasicScheme<From>& scheme, To (*conv)(const From&)) {
  std::vector<To> t, v;
  for (const auto& x : scheme.t()) t.push_back(conv(x));
  for (const auto& x : scheme.v()) v.push_back(conv(x));
  std::vector<GradientTerm<To>> gradient;
  for (const auto& g : scheme.gradient()) gradient.push_back({g.index, conv(g.c)});
  return BasicScheme<To>(scheme.kind(), std::move(t), std::move(v), std::move(gradient),
                         scheme.label());
}

Scheme to_float(const RationalScheme& scheme);

enum class ExactConversion {
  binary,     // exact dyadic value of each double
  recovered,  // small-denominator rational or IrrationalCoefficient
};

RationalScheme to_exact(const Scheme& scheme, ExactConversion mode = ExactConversion::recovered);

std::string_view to_string(Kind kind);

}  // namespace splitlab

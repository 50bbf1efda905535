#pragma once

// Analytic construction of fourth-order splitting schemes.
//
// Velocity kind: for drifts t with t_1 = 0, the kicks
//   v_i = -l2 (t_i + t_{i+1})    (1 < i < N)
//   v_1 = 1/2 + l2 (1 - t_2),  v_N = 1/2 + l2 (1 - t_N),
//   l2 = -1 / (2 (1 - dg))
// make u_i stationary for the quadratic form, giving e_TV = e_TTV = 0 and
// e_VTV = -dg / (24 (1 - dg)). Symmetric drifts with dg = 0 are fourth order
// outright; otherwise the residual e_VTV is cancelled by gradient kicks.
//
// Position kind is the T <-> V mirror with l2 = -1 / (2 sqrt(1 - dg')) and
// e_VTV = -(1 - sqrt(1 - dg')) / 12.

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "splitlab/scheme.hpp"

namespace splitlab::synth {

enum class SymmetryCheck { strict, warn };

enum class Placement {
  central,  // innermost kick, or split evenly over the two innermost
  split,    // proportional to v over the kicks strictly inside the word
};

struct Diagnostics {
  std::vector<std::string> warnings;
};

namespace detail {

std::string format_vector(std::span<const double> x);
std::string format_vector(std::span<const Rational> x);

template <class S>
bool palindromic_tail(std::span<const S> x) {
  const std::size_t n = x.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (!approx_equal(x[i], x[n - i])) return false;
  }
  return true;
}

template <class S>
void require_leading_zero_normalized(std::span<const S> x, const char* name) {
  if (x.size() < 2) {
    throw Error(ErrorCode::precondition_violated,
                std::string("need at least two ") + name + " coefficients");
  }
  if (!is_zero(x[0])) {
    throw Error(ErrorCode::precondition_violated, std::string(name) + "_1 must be 0");
  }
  if (!approx_equal(sum(x), S(1))) {
    throw Error(ErrorCode::precondition_violated, std::string("sum of ") + name + " must be 1");
  }
}

template <class S>
void check_symmetry(std::span<const S> x, const char* name, SymmetryCheck check,
                    Diagnostics* diag) {
  if (palindromic_tail(x)) return;
  const std::string msg = std::string(name) +
                          " is not left-right symmetric; even-order error terms survive and the "
                          "scheme is only third order";
  if (check == SymmetryCheck::strict) throw Error(ErrorCode::not_symmetric, msg);
  if (diag) diag->warnings.push_back(msg);
}

/// Maps a leading-zero sequence `a` to the paired sequence that makes the
/// partial sums stationary, with multiplier l2.
template <class S>
std::vector<S> stationary_partner(std::span<const S> a, const S& l2) {
  const std::size_t n = a.size();
  std::vector<S> b(n);
  const S half = ratio<S>(1, 2);
  for (std::size_t i = 1; i + 1 < n; ++i) b[i] = -l2 * (a[i] + a[i + 1]);
  b[0] = half + l2 * (S(1) - a[1]);
  b[n - 1] = half + l2 * (S(1) - a[n - 1]);
  return b;
}

}  // namespace detail

/// Velocity-kind scheme with v chosen so the quadratic form is stationary.
template <class S>
BasicScheme<S> velocity_from_drifts(std::span<const S> t,
                                    SymmetryCheck check = SymmetryCheck::strict,
                                    Diagnostics* diag = nullptr) {
  detail::require_leading_zero_normalized(t, "t");
  detail::check_symmetry(t, "t", check, diag);
  const S dg = cube_sum(t);
  if (is_zero(S(1) - dg)) {
    throw Error(ErrorCode::degenerate_g, "delta_g = 1 leaves lambda_2 undefined");
  }
  const S l2 = -S(1) / (2 * (S(1) - dg));
  std::vector<S> drifts(t.begin(), t.end());
  auto kicks = detail::stationary_partner(t, l2);
  return BasicScheme<S>(Kind::velocity, std::move(drifts), std::move(kicks), {},
                        "stationary-velocity t=" + detail::format_vector(t));
}

template <class S>
BasicScheme<S> velocity_from_drifts(const std::vector<S>& t,
                                    SymmetryCheck check = SymmetryCheck::strict,
                                    Diagnostics* diag = nullptr) {
  return velocity_from_drifts(std::span<const S>(t), check, diag);
}

/// Kick indices that survive in the word: a position scheme's v_1 = 0 kick
/// is skipped.
template <class S>
std::vector<GradientTerm<S>> place_gradient(Kind kind, std::span<const S> v, const S& total,
                                            Placement placement) {
  std::vector<GradientTerm<S>> terms;
  if (is_zero(total)) return terms;
  const std::size_t first = (kind == Kind::position && is_zero(v[0])) ? 1 : 0;
  const std::size_t last = v.size() - 1;
  if (first > last) throw Error(ErrorCode::precondition_violated, "no kick to carry the gradient");
  auto central = [&] {
    const std::size_t count = last - first + 1;
    const std::size_t mid = first + count / 2;
    if (count % 2 == 1) {
      terms.push_back({mid, total});
    } else {
      const S half = total / 2;
      terms.push_back({mid - 1, half});
      terms.push_back({mid, half});
    }
  };
  if (placement == Placement::central) {
    central();
    return terms;
  }
  // Velocity words start and end with kicks; those two stay gradient-free.
  std::size_t lo = first, hi = last;
  if (kind == Kind::velocity) {
    ++lo;
    if (hi > 0) --hi;
  }
  S weight{};
  for (std::size_t i = lo; i <= hi && lo <= hi; ++i) weight += v[i];
  if (lo > hi || is_zero(weight)) {
    central();
    return terms;
  }
  for (std::size_t i = lo; i <= hi; ++i) {
    if (is_zero(v[i])) continue;
    terms.push_back({i, total * v[i] / weight});
  }
  return terms;
}

/// Stationary velocity scheme plus gradient kicks totalling
/// dg / (24 (1 - dg)), so e_TV = e_TTV = e_VTV = 0 for the full product.
template <class S>
BasicScheme<S> gradient_velocity(std::span<const S> t, Placement placement = Placement::central,
                                 SymmetryCheck check = SymmetryCheck::strict,
                                 Diagnostics* diag = nullptr) {
  auto base = velocity_from_drifts(t, check, diag);
  const S dg = cube_sum(t);
  const S total = dg / (24 * (S(1) - dg));
  auto terms = place_gradient(Kind::velocity, base.v(), total, placement);
  return base.with_gradient(std::move(terms))
      .with_label(std::string("gradient-velocity(") +
                  (placement == Placement::central ? "central" : "split") +
                  ") t=" + detail::format_vector(t));
}

template <class S>
BasicScheme<S> gradient_velocity(const std::vector<S>& t, Placement placement = Placement::central,
                                 SymmetryCheck check = SymmetryCheck::strict,
                                 Diagnostics* diag = nullptr) {
  return gradient_velocity(std::span<const S>(t), placement, check, diag);
}

/// Position-kind fourth-order scheme from symmetric kicks v (v_1 = 0).
Scheme gradient_position(std::span<const double> v, Placement placement = Placement::central,
                         SymmetryCheck check = SymmetryCheck::strict,
                         Diagnostics* diag = nullptr);

/// The T/V-only e_VTV of gradient_position's scheme: -(1 - sqrt(1 - dg'))/12.
double position_residual_vtv(double dg_prime);

/// Symmetric drifts (t_1 = 0) with sum t = 1 and sum t^3 = 0 for n = 6:
/// t = (0, a t3, t3, t4, t3, a t3),
/// t3 = 1 / (2 (1 + a) - 2^{1/3} (1 + a^3)^{1/3}), t4 = -2^{1/3} (1 + a^3)^{1/3} t3.
std::vector<double> zero_dg_symmetric_drifts(int n, double alpha);

/// General n >= 4: the m = n - 1 drifts form a palindrome of k = ceil(m/2)
/// distinct values. `ratios` fixes the outer k - 1 values (outermost first)
/// up to a common scale; the scale and the innermost value are then solved
/// from sum t = 1, sum t^3 = 0.
std::vector<double> zero_dg_drifts(int n, std::span<const double> ratios);

/// Checks t_1 = 0, symmetry, sum t = 1, sum t^3 = 0 (tolerance 1e-12).
void require_zero_dg(std::span<const double> t);

/// Fourth-order velocity scheme with dg = 0 drifts.
Scheme zero_dg_velocity(std::span<const double> t);

/// velocity_from_drifts(zero_dg_symmetric_drifts(6, 0)) with zero pairs
/// pruned: drifts (0, g, -2^{1/3} g, g), g = 1/(2 - 2^{1/3}).
Scheme forest_ruth();

enum class Family { zero_dg_velocity, gradient_velocity, gradient_position, forest_ruth, stationary_velocity };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

struct SynthesisRequest {
  Family family = Family::forest_ruth;
  int n = 6;
  /// Named scalar parameters, e.g. "alpha".
  std::map<std::string, double> params;
  /// Explicit drift (velocity families) or kick (position) vector.
  std::vector<double> coefficients;
  /// zero-dg ratios for general n.
  std::vector<double> ratios;
  Placement placement = Placement::central;
  SymmetryCheck symmetry = SymmetryCheck::strict;
  bool prune = false;
};

Scheme synthesize(const SynthesisRequest& request, Diagnostics* diag = nullptr);

/// Exact construction for the rational families (stationary-velocity,
/// gradient-velocity). Throws IrrationalCoefficient for the others.
RationalScheme synthesize_exact(const SynthesisRequest& request, std::span<const Rational> coefficients,
                                Diagnostics* diag = nullptr);

}  // namespace splitlab::synth

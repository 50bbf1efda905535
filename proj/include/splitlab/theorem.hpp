#pragma once

// Sharp bounds on the third-order error coefficients of T/V splitting
// schemes.
//
// Part A (velocity kind, t_1 = 0, t_{i>1} > 0):
//   e_VTV <= 1/24 - e_TV^2/2 - 6/(1 - dg) (e_TTV - 1/12)^2,   dg = sum t_i^3
// Part B (position kind, v_1 = 0, v_{i>1} > 0):
//   e_TTV >= -1/24 + e_TV^2/2 + 6/(1 - dg') (e_VTV + 1/12)^2,  dg' = sum v_i^3
//
// The bound is the constrained minimum of the quadratic form
// 1/2 sum t_i u_i^2, so it is attained exactly by every scheme whose u_i are
// stationary, regardless of the signs of t_i.

#include <optional>
#include <string>

#include "splitlab/scheme.hpp"

namespace splitlab {

enum class Part { A, B };

inline std::string_view to_string(Part part) { return part == Part::A ? "A" : "B"; }

template <class S>
struct LagrangeSolution {
  S lambda1{};
  S lambda2{};
  S g{};
  S f_min{};
};

/// Minimizes 1/2 sum t_i u_i^2 subject to the e_TV and e_TTV sum
/// constraints; u_i = lambda1 + lambda2 (s_i + s_{i-1}) at the minimum.
template <class S>
LagrangeSolution<S> quadratic_minimum(const S& e_TV, const S& e_TTV, const S& g) {
  if (g < 0 && !is_zero(g)) throw Error(ErrorCode::negative_g, "g must be positive");
  if (is_zero(g)) throw Error(ErrorCode::degenerate_g, "g = 0: the e_TTV constraint is void");
  LagrangeSolution<S> sol;
  sol.g = g;
  const S first = ratio<S>(1, 2) + e_TV;
  sol.lambda2 = (2 * e_TTV - ratio<S>(1, 6)) / g;
  sol.lambda1 = first - sol.lambda2;
  sol.f_min = ratio<S>(1, 2) * (first * first + g * sol.lambda2 * sol.lambda2);
  return sol;
}

/// e_VTV + e_TV^2/2 - e_TTV; zero iff correctable to third order.
template <class S>
S correctability_residual(const ErrorCoefficients<S>& ec) {
  return ec.e_VTV + ratio<S>(1, 2) * ec.e_TV * ec.e_TV - ec.e_TTV;
}

/// Right-hand side of Part A without precondition checks. At dg = 1 the
/// limit e_VTV <= 1/24 - e_TV^2/2 is used (e_TTV = 1/12 is then forced).
template <class S>
S part_a_bound(const S& e_TV, const S& e_TTV, const S& dg) {
  const S base = ratio<S>(1, 24) - ratio<S>(1, 2) * e_TV * e_TV;
  const S denom = 1 - dg;
  if (is_zero(denom)) return base;
  const S d = e_TTV - ratio<S>(1, 12);
  return base - 6 * d * d / denom;
}

template <class S>
S part_b_bound(const S& e_TV, const S& e_VTV, const S& dg_prime) {
  const S base = -ratio<S>(1, 24) + ratio<S>(1, 2) * e_TV * e_TV;
  const S denom = 1 - dg_prime;
  if (is_zero(denom)) return base;
  const S d = e_VTV + ratio<S>(1, 12);
  return base + 6 * d * d / denom;
}

template <class S>
struct TheoremReport {
  Part part = Part::A;
  S bound_rhs{};
  S actual_lhs{};
  /// Nonnegative when the inequality holds.
  S gap{};
  bool degenerate = false;
  S correctability_residual{};
  std::optional<S> corollary_bound;
  /// dg for Part A, dg' for Part B.
  S delta{};
  /// Rearranged form. A: lhs = e_VTV + e_TV^2/2 - e_TTV <= rhs < 0.
  /// B: lhs = e_TTV - e_TV^2/2 - e_VTV >= rhs > 0.
  S fundamental_lhs{};
  S fundamental_rhs{};
  bool satisfied = false;
  /// T/V-only coefficients the bound was evaluated on.
  ErrorCoefficients<S> coefficients;
};

namespace detail {

template <class S>
void require_admissible(const BasicScheme<S>& scheme, Part part) {
  const bool a = part == Part::A;
  const Kind want = a ? Kind::velocity : Kind::position;
  const char* name = a ? "t" : "v";
  auto coeffs = a ? scheme.t() : scheme.v();
  if (scheme.kind() != want) {
    throw Error(ErrorCode::precondition_violated,
                std::string("Part ") + (a ? "A" : "B") + " requires a " +
                    std::string(to_string(want)) + "-kind scheme");
  }
  if (!is_zero(coeffs[0])) {
    throw Error(ErrorCode::precondition_violated, std::string(name) + "_1 must be 0");
  }
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    if (!(coeffs[i] > 0)) {
      throw Error(ErrorCode::precondition_violated,
                  std::string(name) + "_" + std::to_string(i + 1) + " must be positive");
    }
  }
  if (coeffs.size() < 2) {
    throw Error(ErrorCode::precondition_violated, "at least two factor pairs are required");
  }
  if (!is_normalized(scheme)) {
    throw Error(ErrorCode::precondition_violated, "scheme is not normalized (sum t = sum v = 1)");
  }
}

}  // namespace detail

/// Throws PreconditionViolated unless the scheme is Part-`part` admissible.
template <class S>
bool is_admissible(const BasicScheme<S>& scheme, Part part) {
  try {
    detail::require_admissible(scheme, part);
    return true;
  } catch (const Error&) {
    return false;
  }
}

template <class S>
TheoremReport<S> bound_part_a(const BasicScheme<S>& scheme) {
  detail::require_admissible(scheme, Part::A);
  TheoremReport<S> r;
  r.part = Part::A;
  r.coefficients = error_coefficients(scheme, GradientInclusion::exclude);
  const auto& ec = r.coefficients;
  r.delta = delta_g(scheme);
  r.degenerate = is_zero(S(1) - r.delta);
  r.bound_rhs = part_a_bound(ec.e_TV, ec.e_TTV, r.delta);
  r.actual_lhs = ec.e_VTV;
  r.gap = r.bound_rhs - r.actual_lhs;
  r.correctability_residual = correctability_residual(ec);
  r.fundamental_lhs = r.correctability_residual;
  if (r.degenerate) {
    r.fundamental_rhs = -ratio<S>(1, 24) * r.delta;
  } else {
    const S d = ec.e_TTV - ratio<S>(1, 12) * r.delta;
    r.fundamental_rhs = -ratio<S>(1, 24) * r.delta - 6 * d * d / (S(1) - r.delta);
  }
  if (!r.degenerate && is_zero(ec.e_TV) && is_zero(ec.e_TTV)) {
    r.corollary_bound = -r.delta / (24 * (S(1) - r.delta));
  }
  r.satisfied = r.gap >= -ScalarTraits<S>::violation_tol();
  return r;
}

template <class S>
TheoremReport<S> bound_part_b(const BasicScheme<S>& scheme) {
  detail::require_admissible(scheme, Part::B);
  TheoremReport<S> r;
  r.part = Part::B;
  r.coefficients = error_coefficients(scheme, GradientInclusion::exclude);
  const auto& ec = r.coefficients;
  r.delta = delta_g_prime(scheme);
  r.degenerate = is_zero(S(1) - r.delta);
  r.bound_rhs = part_b_bound(ec.e_TV, ec.e_VTV, r.delta);
  r.actual_lhs = ec.e_TTV;
  r.gap = r.actual_lhs - r.bound_rhs;
  r.correctability_residual = correctability_residual(ec);
  r.fundamental_lhs = -r.correctability_residual;
  if (r.degenerate) {
    r.fundamental_rhs = ratio<S>(1, 24) * r.delta;
  } else {
    const S d = ec.e_VTV + ratio<S>(1, 12) * r.delta;
    r.fundamental_rhs = ratio<S>(1, 24) * r.delta + 6 * d * d / (S(1) - r.delta);
  }
  if (!r.degenerate && is_zero(ec.e_TV) && is_zero(ec.e_VTV)) {
    r.corollary_bound = r.delta / (24 * (S(1) - r.delta));
  }
  r.satisfied = r.gap >= -ScalarTraits<S>::violation_tol();
  return r;
}

template <class S>
struct CorollaryResult {
  Part part = Part::A;
  S bound{};
  S actual{};
  /// Nonnegative when the corollary inequality holds.
  S gap{};
  bool satisfied = false;
};

/// A: with e_TV = e_TTV = 0, e_VTV <= -dg/(24(1-dg)).
/// B: with e_TV = e_VTV = 0, e_TTV >= dg'/(24(1-dg')).
/// Stationary schemes meet these with equality whatever the coefficient
/// signs; the inequality itself is only guaranteed for admissible schemes.
template <class S>
CorollaryResult<S> corollary_gap(const BasicScheme<S>& scheme, Part which) {
  const auto ec = error_coefficients(scheme, GradientInclusion::exclude);
  const S tol = ScalarTraits<S>::violation_tol();
  auto small = [&](const S& x) { return ScalarTraits<S>::exact ? x == 0 : (x <= tol && -x <= tol); };
  CorollaryResult<S> r;
  r.part = which;
  if (which == Part::A) {
    if (!small(ec.e_TV) || !small(ec.e_TTV)) {
      throw Error(ErrorCode::precondition_violated, "corollary A needs e_TV = e_TTV = 0");
    }
    const S dg = delta_g(scheme);
    if (is_zero(S(1) - dg)) throw Error(ErrorCode::degenerate_g, "delta_g = 1");
    r.bound = -dg / (24 * (S(1) - dg));
    r.actual = ec.e_VTV;
    r.gap = r.bound - r.actual;
  } else {
    if (!small(ec.e_TV) || !small(ec.e_VTV)) {
      throw Error(ErrorCode::precondition_violated, "corollary B needs e_TV = e_VTV = 0");
    }
    const S dg = delta_g_prime(scheme);
    if (is_zero(S(1) - dg)) throw Error(ErrorCode::degenerate_g, "delta_g' = 1");
    r.bound = dg / (24 * (S(1) - dg));
    r.actual = ec.e_TTV;
    r.gap = r.actual - r.bound;
  }
  r.satisfied = r.gap >= -tol;
  return r;
}

}  // namespace splitlab

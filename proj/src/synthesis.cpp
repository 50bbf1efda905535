#include "splitlab/synthesis.hpp"

#include <cmath>
#include <sstream>

namespace splitlab::synth {

namespace detail {

std::string format_vector(std::span<const double> x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += format_double(x[i]);
  }
  return out + ")";
}

std::string format_vector(std::span<const Rational> x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += splitlab::to_string(x[i]);
  }
  return out + ")";
}

}  // namespace detail

double position_residual_vtv(double dg_prime) {
  if (dg_prime >= 1.0) {
    throw Error(ErrorCode::radicand_negative, "delta_g' must be below 1 (got " +
                                                  format_double(dg_prime) + ")");
  }
  return -(1.0 - std::sqrt(1.0 - dg_prime)) / 12.0;
}

Scheme gradient_position(std::span<const double> v, Placement placement, SymmetryCheck check,
                         Diagnostics* diag) {
  detail::require_leading_zero_normalized(v, "v");
  detail::check_symmetry(v, "v", check, diag);
  const double dg = cube_sum(v);
  const double residual = position_residual_vtv(dg);
  const double l2 = -0.5 / std::sqrt(1.0 - dg);
  auto drifts = detail::stationary_partner(v, l2);
  std::vector<double> kicks(v.begin(), v.end());
  auto terms = place_gradient(Kind::position, v, -residual, placement);
  return Scheme(Kind::position, std::move(drifts), std::move(kicks), std::move(terms),
                std::string("gradient-position(") +
                    (placement == Placement::central ? "central" : "split") +
                    ") v=" + detail::format_vector(v));
}

std::vector<double> zero_dg_drifts(int n, std::span<const double> ratios) {
  if (n < 4) {
    throw Error(ErrorCode::unsupported_n, "zero-dg drifts need n >= 4 (got " + std::to_string(n) + ")");
  }
  const std::size_t m = static_cast<std::size_t>(n - 1);
  const std::size_t k = (m + 1) / 2;
  if (ratios.size() != k - 1) {
    throw Error(ErrorCode::precondition_violated,
                "n = " + std::to_string(n) + " needs " + std::to_string(k - 1) + " ratios (got " +
                    std::to_string(ratios.size()) + ")");
  }
  const double inner_mult = (m % 2 == 1) ? 1.0 : 2.0;
  double linear = 0.0, cubic = 0.0;
  for (double r : ratios) {
    linear += 2.0 * r;
    cubic += 2.0 * r * r * r;
  }
  // innermost value = -cbrt(cubic / inner_mult) * scale
  const double inner_ratio = -std::cbrt(cubic / inner_mult);
  const double denom = linear + inner_mult * inner_ratio;
  const double size = std::abs(linear) + std::abs(inner_mult * inner_ratio);
  if (!(std::abs(denom) > 1e-12 * std::max(1.0, size))) {
    throw Error(ErrorCode::singular_alpha,
                "ratios make sum t vanish identically; no normalized solution");
  }
  const double scale = 1.0 / denom;
  std::vector<double> distinct;
  for (double r : ratios) distinct.push_back(r * scale);
  distinct.push_back(inner_ratio * scale);

  std::vector<double> t(static_cast<std::size_t>(n), 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    t[1 + j] = distinct[j];
    t[m - j] = distinct[j];
  }
  return t;
}

std::vector<double> zero_dg_symmetric_drifts(int n, double alpha) {
  if (n != 6) {
    throw Error(ErrorCode::unsupported_n,
                "the alpha family is defined for n = 6; use zero_dg_drifts for n = " +
                    std::to_string(n));
  }
  const double ratios[] = {alpha, 1.0};
  try {
    return zero_dg_drifts(6, ratios);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_alpha) throw;
    throw Error(ErrorCode::singular_alpha,
                "alpha = " + format_double(alpha) + " makes 2(1+a) - 2^{1/3}(1+a^3)^{1/3} vanish");
  }
}

void require_zero_dg(std::span<const double> t) {
  detail::require_leading_zero_normalized(t, "t");
  detail::check_symmetry(t, "t", SymmetryCheck::strict, nullptr);
  const double dg = cube_sum(t);
  if (std::abs(dg) > 1e-12) {
    throw Error(ErrorCode::precondition_violated,
                "sum t^3 = " + format_double(dg) + " is not zero");
  }
}

Scheme zero_dg_velocity(std::span<const double> t) {
  require_zero_dg(t);
  return velocity_from_drifts(t).with_label("zero-dg t=" + detail::format_vector(t));
}

Scheme forest_ruth() {
  const auto t = zero_dg_symmetric_drifts(6, 0.0);
  return prune_zero_factors(velocity_from_drifts(std::span<const double>(t)))
      .with_label("forest-ruth");
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::zero_dg_velocity: return "zero-dg";
    case Family::gradient_velocity: return "gradient-velocity";
    case Family::gradient_position: return "gradient-position";
    case Family::forest_ruth: return "forest-ruth";
    case Family::stationary_velocity: return "stationary-velocity";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::zero_dg_velocity, Family::gradient_velocity, Family::gradient_position,
                   Family::forest_ruth, Family::stationary_velocity}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorCode::usage_error, "unknown family \"" + std::string(name) + "\"");
}

namespace {

void require_coefficients(const SynthesisRequest& r, const char* what) {
  if (r.coefficients.empty()) {
    throw Error(ErrorCode::usage_error,
                std::string(to_string(r.family)) + " needs an explicit " + what + " vector");
  }
}

}  // namespace

Scheme synthesize(const SynthesisRequest& r, Diagnostics* diag) {
  Scheme scheme = forest_ruth();
  switch (r.family) {
    case Family::forest_ruth:
      scheme = forest_ruth();
      break;
    case Family::zero_dg_velocity: {
      std::vector<double> t;
      std::ostringstream label;
      if (!r.coefficients.empty()) {
        t = r.coefficients;
        label << "zero-dg t=" << detail::format_vector(t);
      } else if (!r.ratios.empty() || r.n != 6) {
        t = zero_dg_drifts(r.n, r.ratios);
        label << "zero-dg(n=" << r.n << ",ratios=" << detail::format_vector(r.ratios) << ")";
      } else {
        const auto it = r.params.find("alpha");
        const double alpha = it == r.params.end() ? 0.0 : it->second;
        t = zero_dg_symmetric_drifts(6, alpha);
        label << "zero-dg(n=6,alpha=" << format_double(alpha) << ")";
      }
      scheme = zero_dg_velocity(t).with_label(label.str());
      break;
    }
    case Family::gradient_velocity:
      require_coefficients(r, "drift");
      scheme = gradient_velocity(r.coefficients, r.placement, r.symmetry, diag);
      break;
    case Family::stationary_velocity:
      require_coefficients(r, "drift");
      scheme = velocity_from_drifts(r.coefficients, r.symmetry, diag);
      break;
    case Family::gradient_position:
      require_coefficients(r, "kick");
      scheme = gradient_position(r.coefficients, r.placement, r.symmetry, diag);
      break;
  }
  return r.prune ? prune_zero_factors(scheme) : scheme;
}

RationalScheme synthesize_exact(const SynthesisRequest& r, std::span<const Rational> coefficients,
                                Diagnostics* diag) {
  if (coefficients.empty()) {
    throw Error(ErrorCode::usage_error,
                std::string(to_string(r.family)) + " needs an explicit coefficient vector");
  }
  RationalScheme scheme = [&] {
    switch (r.family) {
      case Family::gradient_velocity:
        return gradient_velocity(coefficients, r.placement, r.symmetry, diag);
      case Family::stationary_velocity:
        return velocity_from_drifts(coefficients, r.symmetry, diag);
      default:
        throw Error(ErrorCode::irrational_coefficient,
                    std::string(to_string(r.family)) +
                        " involves roots; use float mode");
    }
  }();
  return r.prune ? prune_zero_factors(scheme) : scheme;
}

}  // namespace splitlab::synth

#include "splitlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "splitlab/synthesis.hpp"

namespace splitlab::dynamics {

double HamiltonianSystem::energy(const State& s) const {
  double kinetic = 0.0;
  for (double pi : s.p) kinetic += 0.5 * pi * pi;
  return kinetic + potential(s.q);
}

HamiltonianSystem harmonic_oscillator() {
  HamiltonianSystem sys;
  sys.dim = 1;
  sys.label = "harmonic";
  sys.potential = [](const Vec& q) { return 0.5 * q[0] * q[0]; };
  sys.grad_potential = [](const Vec& q) { return Vec{q[0]}; };
  sys.grad_sq_gradient = [](const Vec& q) { return Vec{2.0 * q[0]}; };
  sys.exact_flow = [](const State& s, double t) {
    const double c = std::cos(t), sn = std::sin(t);
    State out;
    out.q = {s.q[0] * c + s.p[0] * sn};
    out.p = {-s.q[0] * sn + s.p[0] * c};
    out.t = s.t + t;
    return out;
  };
  sys.initial_state = {{1.0}, {0.0}, 0.0};
  return sys;
}

HamiltonianSystem pendulum() {
  HamiltonianSystem sys;
  sys.dim = 1;
  sys.label = "pendulum";
  sys.potential = [](const Vec& q) { return -std::cos(q[0]); };
  sys.grad_potential = [](const Vec& q) { return Vec{std::sin(q[0])}; };
  sys.grad_sq_gradient = [](const Vec& q) { return Vec{std::sin(2.0 * q[0])}; };
  sys.initial_state = {{1.0}, {0.0}, 0.0};
  return sys;
}

HamiltonianSystem kepler(double eccentricity) {
  if (!(eccentricity >= 0.0 && eccentricity < 1.0)) {
    throw Error(ErrorCode::precondition_violated, "Kepler eccentricity must lie in [0, 1)");
  }
  HamiltonianSystem sys;
  sys.dim = 2;
  sys.label = "kepler";
  sys.potential = [](const Vec& q) { return -1.0 / std::hypot(q[0], q[1]); };
  sys.grad_potential = [](const Vec& q) {
    const double r = std::hypot(q[0], q[1]);
    const double r3 = r * r * r;
    return Vec{q[0] / r3, q[1] / r3};
  };
  // |grad V|^2 = r^-4
  sys.grad_sq_gradient = [](const Vec& q) {
    const double r2 = q[0] * q[0] + q[1] * q[1];
    const double r6 = r2 * r2 * r2;
    return Vec{-4.0 * q[0] / r6, -4.0 * q[1] / r6};
  };
  const double e = eccentricity;
  sys.initial_state = {{1.0 - e, 0.0}, {0.0, std::sqrt((1.0 + e) / (1.0 - e))}, 0.0};
  return sys;
}

HamiltonianSystem system_by_name(std::string_view name) {
  if (name == "harmonic") return harmonic_oscillator();
  if (name == "pendulum") return pendulum();
  if (name == "kepler") return kepler();
  throw Error(ErrorCode::usage_error,
              "unknown system \"" + std::string(name) + "\" (harmonic, pendulum, kepler)");
}

namespace {

void drift_in_place(State& s, double h) {
  for (std::size_t i = 0; i < s.q.size(); ++i) s.q[i] += h * s.p[i];
  s.t += h;
}

void kick_in_place(State& s, double h, double gradient, const HamiltonianSystem& sys,
                   double sign) {
  if (h != 0.0) {
    const Vec f = sys.grad_potential(s.q);
    for (std::size_t i = 0; i < s.p.size(); ++i) s.p[i] -= h * f[i];
  }
  if (gradient != 0.0) {
    const Vec g = sys.grad_sq_gradient(s.q);
    for (std::size_t i = 0; i < s.p.size(); ++i) s.p[i] -= sign * gradient * g[i];
  }
}

void step_in_place(const Scheme& scheme, const HamiltonianSystem& sys, State& s, double h,
                   double sign) {
  const double h3 = h * h * h;
  const auto t = scheme.t();
  const auto v = scheme.v();
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    const double c = scheme.has_gradient() ? scheme.gradient_at(i) : 0.0;
    if (scheme.kind() == Kind::velocity) {
      if (t[i] != 0.0) drift_in_place(s, t[i] * h);
      kick_in_place(s, v[i] * h, c * h3, sys, sign);
    } else {
      kick_in_place(s, v[i] * h, c * h3, sys, sign);
      if (t[i] != 0.0) drift_in_place(s, t[i] * h);
    }
  }
}

bool finite(const State& s) {
  auto ok = [](const Vec& x) {
    return std::all_of(x.begin(), x.end(), [](double y) { return std::isfinite(y); });
  };
  return ok(s.q) && ok(s.p);
}

double state_distance(const State& a, const State& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.q.size(); ++i) sum += (a.q[i] - b.q[i]) * (a.q[i] - b.q[i]);
  for (std::size_t i = 0; i < a.p.size(); ++i) sum += (a.p[i] - b.p[i]) * (a.p[i] - b.p[i]);
  return std::sqrt(sum);
}

std::size_t steps_for(double t_final, double h) {
  const double n = t_final / h;
  const double rounded = std::round(n);
  if (!(h > 0.0) || rounded < 1.0 || std::abs(n - rounded) > 1e-9 * std::max(1.0, n)) {
    throw Error(ErrorCode::precondition_violated,
                "step " + format_double(h) + " does not divide t_final " + format_double(t_final));
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

State drift(State state, double h) {
  drift_in_place(state, h);
  return state;
}

State kick(State state, double h, const HamiltonianSystem& system) {
  kick_in_place(state, h, 0.0, system, kGradientSign);
  return state;
}

State gradient_kick(State state, double h, double c, const HamiltonianSystem& system,
                    double sign) {
  kick_in_place(state, h, c * h * h * h, system, sign);
  return state;
}

State step(const Scheme& scheme, const HamiltonianSystem& system, State state, double h,
           double sign) {
  step_in_place(scheme, system, state, h, sign);
  return state;
}

Trajectory integrate(const Scheme& scheme, const HamiltonianSystem& system, const State& start,
                     double h, std::size_t n_steps, std::size_t sample_every, double sign) {
  if (n_steps == 0) throw Error(ErrorCode::precondition_violated, "n_steps must be at least 1");
  if (sample_every == 0) sample_every = 1;
  Trajectory traj;
  State s = start;
  const double e0 = system.energy(s);
  const double scale = std::abs(e0) > 0.0 ? std::abs(e0) : 1.0;
  traj.times.push_back(s.t);
  traj.energies.push_back(e0);
  for (std::size_t k = 1; k <= n_steps; ++k) {
    step_in_place(scheme, system, s, h, sign);
    if (!finite(s)) {
      throw Error(ErrorCode::non_finite, "state left the finite range at step " + std::to_string(k));
    }
    const double e = system.energy(s);
    traj.max_energy_deviation = std::max(traj.max_energy_deviation, std::abs(e - e0) / scale);
    if (k % sample_every == 0 || k == n_steps) {
      traj.times.push_back(s.t);
      traj.energies.push_back(e);
    }
  }
  traj.final_state = std::move(s);
  return traj;
}

State reference_solution(const HamiltonianSystem& system, const State& start, double t_final,
                         double h_ref) {
  static const Scheme fr = synth::forest_ruth();
  const auto n = static_cast<std::size_t>(std::ceil(t_final / h_ref - 1e-9));
  const double h = t_final / static_cast<double>(n);
  State s = start;
  for (std::size_t k = 0; k < n; ++k) step_in_place(fr, system, s, h, kGradientSign);
  if (!finite(s)) throw Error(ErrorCode::non_finite, "reference run diverged");
  return s;
}

std::vector<double> halving_steps(double h0, std::size_t levels) {
  std::vector<double> h;
  for (std::size_t k = 0; k < levels; ++k) h.push_back(h0 / std::ldexp(1.0, static_cast<int>(k)));
  return h;
}

SlopeFit fit_order(std::span<const double> step_sizes, std::span<const double> errors,
                   double floor) {
  SlopeFit fit;
  std::size_t end = 0;
  while (end < errors.size() && std::isfinite(errors[end]) && errors[end] > 100.0 * floor &&
         errors[end] > 0.0) {
    ++end;
  }
  fit.end = end;
  if (end < 2) {
    fit.slope = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  auto local = [&](std::size_t k) {
    return std::log(errors[k] / errors[k + 1]) / std::log(step_sizes[k] / step_sizes[k + 1]);
  };
  std::size_t begin = 0;
  while (begin + 2 < end && std::abs(local(begin) - local(begin + 1)) > 0.3) ++begin;
  fit.begin = begin;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(end - begin);
  for (std::size_t k = begin; k < end; ++k) {
    const double x = std::log(step_sizes[k]);
    const double y = std::log(errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

ConvergenceReport convergence_study(const Scheme& scheme, const HamiltonianSystem& system,
                                    const State& start, double t_final,
                                    std::span<const double> step_sizes,
                                    const ConvergenceOptions& options) {
  if (step_sizes.empty()) throw Error(ErrorCode::precondition_violated, "no step sizes");
  for (std::size_t k = 1; k < step_sizes.size(); ++k) {
    if (!(step_sizes[k] < step_sizes[k - 1])) {
      throw Error(ErrorCode::precondition_violated, "step sizes must be strictly decreasing");
    }
  }
  ConvergenceReport report;
  State reference;
  if (options.reference_state) {
    reference = *options.reference_state;
    report.reference = "supplied";
    report.reference_floor = 1e-12;
  } else if (system.exact_flow) {
    reference = system.exact_flow(start, t_final);
    report.reference = "exact";
    report.reference_floor = 1e-14;
  } else {
    const double h_ref = step_sizes.back() / options.reference_divisor;
    reference = reference_solution(system, start, t_final, h_ref);
    report.reference = "forest-ruth h=" + format_double(h_ref);
    report.reference_floor = 1e-12;
  }
  for (double h : step_sizes) {
    const std::size_t n = steps_for(t_final, h);
    const auto traj = integrate(scheme, system, start, t_final / static_cast<double>(n), n,
                                n, options.sign);
    report.step_sizes.push_back(h);
    report.errors.push_back(state_distance(traj.final_state, reference));
    report.energy_drifts.push_back(traj.max_energy_deviation);
  }
  report.energy_drift = *std::max_element(report.energy_drifts.begin(), report.energy_drifts.end());
  const auto fit = fit_order(report.step_sizes, report.errors, report.reference_floor);
  report.slope = fit.slope;
  report.fit_begin = fit.begin;
  report.fit_end = fit.end;
  return report;
}

double symplectic_check(const Scheme& scheme, const HamiltonianSystem& system, const State& state,
                        double h, double sign) {
  const std::size_t d = state.q.size();
  const std::size_t n = 2 * d;
  auto flat = [&](const State& s) {
    Vec z(s.q);
    z.insert(z.end(), s.p.begin(), s.p.end());
    return z;
  };
  auto unflat = [&](const Vec& z) {
    State s;
    s.q.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(d));
    s.p.assign(z.begin() + static_cast<std::ptrdiff_t>(d), z.end());
    s.t = state.t;
    return s;
  };
  const Vec z0 = flat(state);
  std::vector<Vec> m(n, Vec(n, 0.0));  // m[i][j] = d out_i / d in_j
  for (std::size_t j = 0; j < n; ++j) {
    const double delta = 1e-5 * std::max(1.0, std::abs(z0[j]));
    Vec zp = z0, zm = z0;
    zp[j] += delta;
    zm[j] -= delta;
    const Vec fp = flat(step(scheme, system, unflat(zp), h, sign));
    const Vec fm = flat(step(scheme, system, unflat(zm), h, sign));
    for (std::size_t i = 0; i < n; ++i) m[i][j] = (fp[i] - fm[i]) / (2.0 * delta);
  }
  auto J = [&](std::size_t i, std::size_t j) {
    if (i < d && j == i + d) return 1.0;
    if (i >= d && j + d == i) return -1.0;
    return 0.0;
  };
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      double x = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) x += m[i][a] * J(i, j) * m[j][b];
      worst = std::max(worst, std::abs(x - J(a, b)));
    }
  }
  return worst;
}

std::string to_csv(const ConvergenceReport& report) {
  std::string out = "h,error,energy_drift\n";
  for (std::size_t k = 0; k < report.step_sizes.size(); ++k) {
    out += format_double(report.step_sizes[k]) + "," + format_double(report.errors[k]) + "," +
           format_double(report.energy_drifts[k]) + "\n";
  }
  return out;
}

io::Json to_json(const ConvergenceReport& report) {
  io::Json j;
  j["step_sizes"] = report.step_sizes;
  j["errors"] = report.errors;
  j["energy_drifts"] = report.energy_drifts;
  if (std::isfinite(report.slope)) {
    j["slope"] = report.slope;
  } else {
    j["slope"] = nullptr;
  }
  j["fit_range"] = {report.fit_begin, report.fit_end};
  j["energy_drift"] = report.energy_drift;
  j["reference"] = report.reference;
  return j;
}

}  // namespace splitlab::dynamics

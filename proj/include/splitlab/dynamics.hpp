#pragma once

// Splitting schemes applied as classical maps for H = p^2/2 + V(q).
//
//   drift:  q <- q + h p
//   kick:   p <- p - h grad V(q)
//   gradient term c eps^3 [V,[T,V]]:  p <- p - sigma c eps^3 grad |grad V|^2
//
// [V,[T,V]] acts as the Hamiltonian vector field of -|grad V|^2 when factors
// are applied left to right, which fixes sigma = -1. The calibration test
// checks that this sign, and not the other, gives fourth order.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "splitlab/scheme.hpp"
#include "splitlab/scheme_io.hpp"

namespace splitlab::dynamics {

using Vec = std::vector<double>;

inline constexpr double kGradientSign = -1.0;

struct State {
  Vec q;
  Vec p;
  double t = 0.0;
};

struct HamiltonianSystem {
  std::size_t dim = 1;
  std::function<double(const Vec&)> potential;
  std::function<Vec(const Vec&)> grad_potential;
  /// grad |grad V|^2 = 2 Hess(V) grad V
  std::function<Vec(const Vec&)> grad_sq_gradient;
  std::string label;
  /// Exact flow for time `t`, when known in closed form.
  std::function<State(const State&, double)> exact_flow;
  State initial_state;

  double energy(const State& s) const;
};

HamiltonianSystem harmonic_oscillator();
HamiltonianSystem pendulum();
/// Planar Kepler problem, V = -1/r, started at perihelion of an orbit with
/// semi-major axis 1 (period 2 pi).
HamiltonianSystem kepler(double eccentricity = 0.5);

/// "harmonic", "pendulum", "kepler"; throws UsageError otherwise.
HamiltonianSystem system_by_name(std::string_view name);

State drift(State state, double h);
State kick(State state, double h, const HamiltonianSystem& system);
State gradient_kick(State state, double h, double c, const HamiltonianSystem& system,
                    double sign = kGradientSign);

/// One step of size h, factors applied in written order.
State step(const Scheme& scheme, const HamiltonianSystem& system, State state, double h,
           double sign = kGradientSign);

struct Trajectory {
  State final_state;
  std::vector<double> times;
  std::vector<double> energies;
  /// max |E - E0| / |E0| over all steps
  double max_energy_deviation = 0.0;
};

/// Throws Error(non_finite) naming the step at which the state blew up.
Trajectory integrate(const Scheme& scheme, const HamiltonianSystem& system, const State& start,
                     double h, std::size_t n_steps, std::size_t sample_every = 1,
                     double sign = kGradientSign);

struct ConvergenceReport {
  std::vector<double> step_sizes;
  std::vector<double> errors;
  std::vector<double> energy_drifts;
  double slope = 0.0;
  /// max of energy_drifts
  double energy_drift = 0.0;
  /// Half-open range of levels used by the fit.
  std::size_t fit_begin = 0;
  std::size_t fit_end = 0;
  std::string reference;
  double reference_floor = 0.0;
};

struct ConvergenceOptions {
  double sign = kGradientSign;
  /// Reference step = smallest h divided by this, for systems without an
  /// exact flow.
  double reference_divisor = 100.0;
  /// Supplied reference final state (skips the reference run).
  std::optional<State> reference_state;
};

ConvergenceReport convergence_study(const Scheme& scheme, const HamiltonianSystem& system,
                                    const State& start, double t_final,
                                    std::span<const double> step_sizes,
                                    const ConvergenceOptions& options = {});

/// High-accuracy final state from a fine Forest-Ruth run.
State reference_solution(const HamiltonianSystem& system, const State& start, double t_final,
                         double h_ref);

/// Least-squares log-log slope over the asymptotic range: points with
/// error <= 100 * floor are dropped, then leading points are dropped while
/// consecutive local slopes differ by more than 0.3.
struct SlopeFit {
  double slope = 0.0;
  std::size_t begin = 0;
  std::size_t end = 0;
};
SlopeFit fit_order(std::span<const double> step_sizes, std::span<const double> errors,
                   double floor);

/// h_k = h0 / 2^k, k = 0..levels-1
std::vector<double> halving_steps(double h0, std::size_t levels);

/// max |M^T J M - J| for the central-difference Jacobian M of one step.
double symplectic_check(const Scheme& scheme, const HamiltonianSystem& system, const State& state,
                        double h, double sign = kGradientSign);

/// Columns h,error,energy_drift.
std::string to_csv(const ConvergenceReport& report);
io::Json to_json(const ConvergenceReport& report);

}  // namespace splitlab::dynamics

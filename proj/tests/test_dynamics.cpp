#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "splitlab/dynamics.hpp"
#include "splitlab/synthesis.hpp"

using namespace splitlab;
using namespace splitlab::dynamics;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

Scheme leapfrog() { return Scheme(Kind::velocity, {0.0, 1.0}, {0.5, 0.5}); }

Scheme four_d() {
  return Scheme(Kind::velocity, {0.0, 1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.125, 0.375, 0.375, 0.125},
                {{1, 1.0 / 384}, {2, 1.0 / 384}});
}

double distance(const State& a, const State& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.q.size(); ++i) s += std::pow(a.q[i] - b.q[i], 2);
  for (std::size_t i = 0; i < a.p.size(); ++i) s += std::pow(a.p[i] - b.p[i], 2);
  return std::sqrt(s);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::usage_error;
}

}  // namespace

TEST_CASE("elementary maps") {
  const auto ho = harmonic_oscillator();
  const State s{{1.0}, {2.0}};
  CHECK(drift(s, 0.5).q[0] == 2.0);
  CHECK(drift(s, 0.5).p[0] == 2.0);
  CHECK(kick(State{{1.0}, {0.0}}, 1.0, ho).p[0] == -1.0);
  // grad |grad V|^2 = 2q for the oscillator
  const auto g = gradient_kick(State{{1.0}, {0.0}}, 1.0, 1.0 / 192, ho);
  CHECK(g.p[0] == doctest::Approx(-1.0 - kGradientSign / 96));
  CHECK(g.p[0] == doctest::Approx(-1.0 + 1.0 / 96));
  CHECK(g.q[0] == 1.0);
}

TEST_CASE("analytic gradients match finite differences") {
  for (const auto& sys : {harmonic_oscillator(), pendulum(), kepler()}) {
    CAPTURE(sys.label);
    Vec q(sys.dim);
    for (std::size_t i = 0; i < sys.dim; ++i) q[i] = 0.7 + 0.3 * static_cast<double>(i);
    const auto grad = sys.grad_potential(q);
    const auto grad_sq = sys.grad_sq_gradient(q);
    const double h = 1e-6;
    auto norm_sq = [&](const Vec& x) {
      double s = 0;
      for (double y : sys.grad_potential(x)) s += y * y;
      return s;
    };
    for (std::size_t i = 0; i < sys.dim; ++i) {
      Vec a = q, b = q;
      a[i] += h;
      b[i] -= h;
      CHECK(grad[i] == doctest::Approx((sys.potential(a) - sys.potential(b)) / (2 * h)).epsilon(1e-7));
      CHECK(grad_sq[i] == doctest::Approx((norm_sq(a) - norm_sq(b)) / (2 * h)).epsilon(1e-6));
    }
  }
}

TEST_CASE("systems by name") {
  CHECK(system_by_name("kepler").dim == 2);
  CHECK(code_of([] { system_by_name("duffing"); }) == ErrorCode::usage_error);
  CHECK(code_of([] { kepler(1.0); }) == ErrorCode::precondition_violated);
}

TEST_CASE("Kepler orbit closes after one period") {
  const auto k = kepler();
  CHECK(k.energy(k.initial_state) == doctest::Approx(-0.5));
  const auto end = reference_solution(k, k.initial_state, kTwoPi, kTwoPi / 20000);
  CHECK(distance(end, k.initial_state) < 1e-8);
}

TEST_CASE("symmetric schemes are reversible") {
  const auto sys = pendulum();
  for (const auto& s : {leapfrog(), four_d(), synth::forest_ruth()}) {
    const State start{{0.8}, {0.3}};
    const auto fwd = step(s, sys, start, 0.2);
    const auto back = step(s, sys, fwd, -0.2);
    CHECK(distance(back, start) < 1e-14);
  }
}

TEST_CASE("leapfrog local error is third order") {
  const auto ho = harmonic_oscillator();
  const State start{{1.0}, {0.0}};
  double prev = 0;
  for (double h : {0.1, 0.05, 0.025}) {
    const double err = distance(step(leapfrog(), ho, start, h), ho.exact_flow(start, h));
    if (prev > 0) CHECK(prev / err == doctest::Approx(8.0).epsilon(0.05));
    prev = err;
  }
}

TEST_CASE("gradient sign calibration") {
  const auto ho = harmonic_oscillator();
  const auto steps = halving_steps(kTwoPi / 32, 4);
  ConvergenceOptions right;
  ConvergenceOptions wrong;
  wrong.sign = -kGradientSign;
  const auto a = convergence_study(four_d(), ho, ho.initial_state, kTwoPi, steps, right);
  const auto b = convergence_study(four_d(), ho, ho.initial_state, kTwoPi, steps, wrong);
  CHECK(a.slope == doctest::Approx(4.0).epsilon(0.04));
  CHECK(b.slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("convergence slopes on the oscillator") {
  const auto ho = harmonic_oscillator();
  const auto steps = halving_steps(kTwoPi / 32, 5);
  const auto lf = convergence_study(leapfrog(), ho, ho.initial_state, kTwoPi, steps);
  CHECK(lf.slope == doctest::Approx(2.0).epsilon(0.05));
  CHECK(lf.reference == "exact");
  const auto fr = convergence_study(synth::forest_ruth(), ho, ho.initial_state, kTwoPi, steps);
  CHECK(fr.slope == doctest::Approx(4.0).epsilon(0.04));
  CHECK(fr.energy_drift < 1e-3);
}

TEST_CASE("leapfrog energy stays bounded") {
  const auto sys = pendulum();
  const State start{{1.0}, {0.0}};
  const auto early = integrate(leapfrog(), sys, start, 0.1, 1000, 1000);
  const auto late = integrate(leapfrog(), sys, start, 0.1, 100000, 10000);
  CHECK(late.max_energy_deviation < 1e-2);
  CHECK(late.max_energy_deviation < 1.5 * early.max_energy_deviation);
  CHECK(late.final_state.t == doctest::Approx(10000.0));
}

TEST_CASE("one-step maps are symplectic") {
  const auto sys = pendulum();
  for (const auto& s : {leapfrog(), four_d(), synth::forest_ruth(),
                        synth::gradient_position(std::vector<double>{0, 1.0 / 3, 1.0 / 3, 1.0 / 3})}) {
    CHECK(symplectic_check(s, sys, State{{0.9}, {0.4}}, 0.3) <= 1e-7);
  }
  const auto k = kepler();
  CHECK(symplectic_check(four_d(), k, k.initial_state, 0.1) <= 1e-7);
}

TEST_CASE("blow-up is reported") {
  const auto ho = harmonic_oscillator();
  CHECK(code_of([&] { integrate(leapfrog(), ho, ho.initial_state, 3.0, 100000); }) ==
        ErrorCode::non_finite);
}

TEST_CASE("convergence preconditions") {
  const auto ho = harmonic_oscillator();
  const double bad[] = {0.3};
  CHECK(code_of([&] { convergence_study(leapfrog(), ho, ho.initial_state, 1.0, bad); }) ==
        ErrorCode::precondition_violated);
  const double up[] = {0.1, 0.2};
  CHECK(code_of([&] { convergence_study(leapfrog(), ho, ho.initial_state, 1.0, up); }) ==
        ErrorCode::precondition_violated);
}

TEST_CASE("slope fit") {
  std::vector<double> h, e;
  for (int k = 0; k < 6; ++k) {
    h.push_back(std::ldexp(0.1, -k));
    e.push_back(3.0 * std::pow(h.back(), 4));
  }
  CHECK(fit_order(h, e, 1e-20).slope == doctest::Approx(4.0));
  // Points at the floor are excluded.
  e[5] = 1e-14;
  const auto f = fit_order(h, e, 1e-15);
  CHECK(f.end == 5);
  CHECK(f.slope == doctest::Approx(4.0));
  // A pre-asymptotic first point is skipped.
  e = {1.0, 3e-4, 3e-4 / 16, 3e-4 / 256, 3e-4 / 4096, 3e-4 / 65536};
  const auto g = fit_order(h, e, 1e-20);
  CHECK(g.begin == 1);
  CHECK(g.slope == doctest::Approx(4.0));
}

TEST_CASE("report serialization") {
  const auto ho = harmonic_oscillator();
  const auto r = convergence_study(leapfrog(), ho, ho.initial_state, kTwoPi,
                                   halving_steps(kTwoPi / 8, 3));
  const auto csv = to_csv(r);
  CHECK(csv.rfind("h,error,energy_drift\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  const auto j = to_json(r);
  CHECK(j["errors"].size() == 3);
}

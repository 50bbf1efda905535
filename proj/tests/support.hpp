#pragma once

#include <random>
#include <vector>

#include "splitlab/scheme.hpp"

namespace test_support {

using splitlab::Kind;
using splitlab::Rational;
using splitlab::RationalScheme;
using splitlab::Scheme;

// Small signed rationals p/q with |p| <= 9, q in 1..8.
inline Rational random_rational(std::mt19937_64& rng, bool allow_negative = true) {
  std::uniform_int_distribution<int> num(allow_negative ? -9 : 0, 9);
  std::uniform_int_distribution<int> den(1, 8);
  return Rational(num(rng), den(rng));
}

inline std::vector<Rational> random_rationals(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> x(n);
  for (auto& r : x) r = random_rational(rng);
  return x;
}

inline RationalScheme random_rational_scheme(std::mt19937_64& rng, std::size_t max_n = 8,
                                             bool with_gradient = false) {
  std::uniform_int_distribution<std::size_t> size(1, max_n);
  const std::size_t n = size(rng);
  const Kind kind = rng() % 2 ? Kind::velocity : Kind::position;
  std::vector<splitlab::GradientTerm<Rational>> grad;
  if (with_gradient) {
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    for (int k = 0; k < 2; ++k) grad.push_back({idx(rng), random_rational(rng)});
  }
  return RationalScheme(kind, random_rationals(rng, n), random_rationals(rng, n), grad);
}

// Flat Dirichlet(1,...,1) sample of length n.
inline std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> x(n);
  double total = 0.0;
  for (auto& xi : x) total += (xi = e(rng));
  for (auto& xi : x) xi /= total;
  return x;
}

// Part-A admissible: velocity kind, t_1 = 0, remaining drifts and all kicks positive.
inline Scheme random_part_a(std::mt19937_64& rng, std::size_t max_n = 8) {
  std::uniform_int_distribution<std::size_t> size(2, max_n);
  const std::size_t n = size(rng);
  auto inner = dirichlet(rng, n - 1);
  std::vector<double> t{0.0};
  t.insert(t.end(), inner.begin(), inner.end());
  return Scheme(Kind::velocity, t, dirichlet(rng, n));
}

inline Scheme random_part_b(std::mt19937_64& rng, std::size_t max_n = 8) {
  std::uniform_int_distribution<std::size_t> size(2, max_n);
  const std::size_t n = size(rng);
  auto inner = dirichlet(rng, n - 1);
  std::vector<double> v{0.0};
  v.insert(v.end(), inner.begin(), inner.end());
  return Scheme(Kind::position, dirichlet(rng, n), v);
}

inline RationalScheme rs(Kind kind, std::vector<Rational> t, std::vector<Rational> v,
                         std::vector<splitlab::GradientTerm<Rational>> g = {}) {
  return RationalScheme(kind, std::move(t), std::move(v), std::move(g));
}

inline Rational q(long p, long d = 1) { return Rational(p, d); }

}  // namespace test_support

#include <doctest.h>

#include <cmath>
#include <random>

#include "splitlab/scheme.hpp"
#include "support.hpp"

using namespace splitlab;
using test_support::q;
using test_support::rs;

namespace {

RationalScheme leapfrog() { return rs(Kind::velocity, {q(0), q(1)}, {q(1, 2), q(1, 2)}); }

RationalScheme four_d() {
  return rs(Kind::velocity, {q(0), q(1, 3), q(1, 3), q(1, 3)},
            {q(1, 8), q(3, 8), q(3, 8), q(1, 8)});
}

}  // namespace

TEST_CASE("partial sums") {
  const auto ps = partial_sums(four_d());
  REQUIRE(ps.s.size() == 5);
  CHECK(ps.s == std::vector<Rational>{q(0), q(0), q(1, 3), q(2, 3), q(1)});
  CHECK(ps.u == std::vector<Rational>{q(1), q(7, 8), q(1, 2), q(1, 8), q(0)});
}

TEST_CASE("leapfrog coefficients") {
  const auto ec = error_coefficients(leapfrog());
  CHECK(ec.e_T == 1);
  CHECK(ec.e_V == 1);
  CHECK(ec.e_TV == 0);
  CHECK(ec.e_TTV == q(1, 12));
  CHECK(ec.e_VTV == q(1, 24));
  CHECK(delta_g(leapfrog()) == 1);
  CHECK(g_sum(leapfrog()) == 0);
}

TEST_CASE("4D coefficients and its drift variant") {
  const auto ec = error_coefficients(four_d());
  CHECK(ec.e_TV == 0);
  CHECK(ec.e_TTV == 0);
  CHECK(ec.e_VTV == q(-1, 192));
  CHECK(delta_g(four_d()) == q(1, 9));
  CHECK(g_sum(four_d()) == q(8, 27));

  const auto variant = rs(Kind::velocity, {q(0), q(2, 3), q(-1, 3), q(2, 3)},
                          {q(1, 8), q(3, 8), q(3, 8), q(1, 8)});
  const auto ev = error_coefficients(variant);
  CHECK(ev.e_TV == 0);
  CHECK(ev.e_TTV == 0);
  CHECK(ev.e_VTV == q(-5, 96));
  CHECK(delta_g(variant) == q(5, 9));
}

TEST_CASE("gradient terms add to e_VTV only") {
  const auto s = four_d().with_gradient({{1, q(1, 384)}, {2, q(1, 384)}});
  const auto with = error_coefficients(s);
  const auto without = error_coefficients(s, GradientInclusion::exclude);
  CHECK(with.e_VTV == 0);
  CHECK(without.e_VTV == q(-1, 192));
  CHECK(with.e_TTV == without.e_TTV);
  CHECK(s.gradient_total() == q(1, 192));
  CHECK(s.gradient_at(1) == q(1, 384));
  CHECK(s.gradient_at(0) == 0);
}

TEST_CASE("g identity holds exactly for arbitrary drifts") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const auto t = test_support::random_rationals(rng, 1 + rng() % 8);
    CHECK(g_identity_residual(std::span<const Rational>(t)) == 0);
  }
}

TEST_CASE("normalized g reduces to (1 - dg)/3") {
  const auto s = four_d();
  CHECK(g_sum(s) == (1 - delta_g(s)) / 3);
}

TEST_CASE("dual interchanges coefficients and is an involution") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const auto s = test_support::random_rational_scheme(rng);
    const auto d = dual(s);
    CHECK(d.kind() == mirrored(s.kind()));
    CHECK(dual(d) == s);
    CHECK(error_coefficients(d) == interchanged(error_coefficients(s)));
  }
  const auto d4 = dual(four_d());
  CHECK(error_coefficients(d4).e_VTV == 0);
  CHECK(error_coefficients(d4).e_TTV == q(1, 192));
}

TEST_CASE("dual rejects gradient schemes") {
  const auto s = four_d().with_gradient({{1, q(1, 192)}});
  CHECK_THROWS_AS(dual(s), Error);
}

TEST_CASE("symmetry examples") {
  CHECK(is_symmetric(leapfrog()));
  CHECK(is_symmetric(four_d()));
  CHECK_FALSE(is_symmetric(rs(Kind::velocity, {q(0), q(1, 3), q(2, 3)}, {q(1, 2), q(1, 4), q(1, 4)})));
  // Position-kind leapfrog written with a leading zero kick.
  CHECK(is_symmetric(rs(Kind::position, {q(1, 2), q(1, 2)}, {q(0), q(1)})));
}

TEST_CASE("symmetric schemes have e_TV = 0") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    // v palindrome, t_1 = 0 and t_2..t_N palindrome
    const std::size_t n = 2 + rng() % 6;
    auto v = test_support::random_rationals(rng, n);
    auto t = test_support::random_rationals(rng, n);
    t[0] = 0;
    for (std::size_t i = 0; i < n / 2; ++i) v[n - 1 - i] = v[i];
    for (std::size_t i = 1; i < n; ++i) t[n - i] = t[i];
    const RationalScheme s(Kind::velocity, t, v);
    REQUIRE(is_symmetric(s));
    CHECK(error_coefficients(s).e_TV == 0);
  }
}

TEST_CASE("pruning preserves the operator product") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 200; ++k) {
    auto s = test_support::random_rational_scheme(rng, 8, true);
    // Sprinkle zeros so there is something to prune.
    std::vector<Rational> t(s.t().begin(), s.t().end()), v(s.v().begin(), s.v().end());
    for (auto& x : t) if (rng() % 3 == 0) x = 0;
    for (auto& x : v) if (rng() % 3 == 0) x = 0;
    std::vector<GradientTerm<Rational>> g(s.gradient().begin(), s.gradient().end());
    const RationalScheme z(s.kind(), t, v, g);
    const auto p = prune_zero_factors(z);
    CHECK(p.size() <= z.size());
    CHECK(p.kind() == z.kind());
    CHECK(error_coefficients(p) == error_coefficients(z));
    CHECK(p.gradient_total() == z.gradient_total());
  }
}

TEST_CASE("forward and normalization predicates") {
  CHECK(is_forward(four_d()));
  CHECK(is_normalized(four_d()));
  CHECK_FALSE(is_forward(rs(Kind::velocity, {q(0), q(2, 3), q(-1, 3), q(2, 3)},
                            {q(1, 8), q(3, 8), q(3, 8), q(1, 8)})));
  CHECK_FALSE(is_normalized(rs(Kind::velocity, {q(0), q(1)}, {q(1, 2), q(1)})));
}

TEST_CASE("float and exact conversions") {
  const auto f = to_float(four_d());
  CHECK(f.t()[1] == doctest::Approx(1.0 / 3.0));
  CHECK(to_exact(f) == four_d());
  const Scheme irr(Kind::velocity, {0.0, std::sqrt(2.0)}, {0.5, 0.5});
  CHECK_THROWS_AS(to_exact(irr), Error);
  CHECK(to_exact(irr, ExactConversion::binary).t()[1] == exact_from_double(std::sqrt(2.0)));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(Scheme(Kind::velocity, {0.0, 1.0}, {1.0}), Error);
  CHECK_THROWS_AS(Scheme(Kind::velocity, {}, {}), Error);
  CHECK_THROWS_AS(Scheme(Kind::velocity, {0.0, 1.0}, {0.5, 0.5}, {{2, 0.1}}), Error);
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qcournot/classical_game.hpp"
#include "qcournot/game_types.hpp"

using namespace qcournot;
using namespace qcournot::classical;

namespace {

// Var(q) = exp(-2q): firm 2 gets more precise as it produces more.
CountDistribution shrinking_noise() {
  return CountDistribution::custom([](double q) { return std::exp(-2.0 * q); },
                                   [](double q) { return -2.0 * std::exp(-2.0 * q); });
}

}  // namespace

TEST_CASE("classical_payoffs worked examples") {
  auto u = classical_payoffs({1, 1, 4}, CountDistribution::deterministic());
  CHECK(u.u1 == 2.0);
  CHECK(u.u2 == 2.0);

  u = classical_payoffs({1, 1, 4}, CountDistribution::poisson());
  CHECK(u.u1 == 2.0);
  CHECK(u.u2 == 1.0);
  // brute-force expectation over the Poisson count with firm 1 exact
  const double brute =
      oracle::poisson_expectation(1.0, [](double eta) { return eta * (4.0 - 1.0 - eta); });
  CHECK(u.u2 == doctest::Approx(brute).epsilon(1e-12));

  u = classical_payoffs({0, 0, 5}, CountDistribution::poisson());
  CHECK(u.u1 == 0.0);
  CHECK(u.u2 == 0.0);
}

TEST_CASE("classical_payoffs rejects bad inputs") {
  CHECK_THROWS_AS(classical_payoffs({-1, 1, 4}, CountDistribution::poisson()), DomainError);
  CHECK_THROWS_AS(classical_payoffs({1, 1, 0.5}, CountDistribution::poisson()), DomainError);
  const auto broken =
      CountDistribution::custom([](double) { return std::nan(""); }, [](double) { return 0.0; });
  CHECK_THROWS_AS(classical_payoffs({1, 1, 4}, broken), DomainError);
  const auto negative =
      CountDistribution::custom([](double q) { return -q; }, [](double) { return -1.0; });
  CHECK_THROWS_AS(classical_payoffs({1, 1, 4}, negative), DomainError);
}

TEST_CASE("mandel_q") {
  auto m = mandel_q(CountDistribution::poisson(), 3.0);
  CHECK(m.q == 0.0);
  CHECK(m.g2 == 1.0);

  m = mandel_q(CountDistribution::constant_variance(2.0), 1.0);
  CHECK(m.q == doctest::Approx(1.0));
  CHECK(m.g2 == doctest::Approx(2.0));  // (Q + q2)/q2

  m = mandel_q(CountDistribution::constant_variance(0.5), 2.0);
  CHECK(m.q == doctest::Approx(-0.75));
  CHECK(m.g2 == doctest::Approx(0.625));

  CHECK_THROWS_AS(mandel_q(CountDistribution::poisson(), 0.0), DomainError);

  // Poisson light is exactly coherent for every mean.
  for (double q : {1e-6, 0.3, 1.0, 7.5, 1234.0}) {
    const auto p = mandel_q(CountDistribution::poisson(), q);
    CHECK(p.q == 0.0);
    CHECK(p.g2 == 1.0);
  }
}

TEST_CASE("classical_payoffs_mandel_form examples") {
  auto u = classical_payoffs_mandel_form({1, 1, 4}, 0.0);
  CHECK(u.u1 == 2.0);
  CHECK(u.u2 == 1.0);
  u = classical_payoffs_mandel_form({1, 1, 4}, -1.0);
  CHECK(u.u2 == 2.0);
  u = classical_payoffs_mandel_form({2, 1, 6}, 1.0);
  CHECK(u.u1 == 6.0);
  CHECK(u.u2 == 1.0);  // 1 * [6 - (2 + 1 + 1 + 1)]
  // same point through the variance form with Var = 2
  const auto direct = classical_payoffs({2, 1, 6}, CountDistribution::constant_variance(2.0));
  CHECK(direct.u2 == 1.0);  // 1 * (6 - 3) - 2
}

TEST_CASE("Mandel form agrees with variance form on a grid") {
  const std::vector<CountDistribution> dists{CountDistribution::poisson(),
                                             CountDistribution::constant_variance(0.7),
                                             CountDistribution::constant_variance(3.0),
                                             shrinking_noise()};
  for (const auto& dist : dists) {
    for (double q1 = 0.0; q1 <= 5.0; q1 += 0.5) {
      for (double q2 = 0.25; q2 <= 5.0; q2 += 0.25) {
        const ClassicalQuantities q{q1, q2, 6.0};
        const auto a = classical_payoffs(q, dist);
        const auto b = classical_payoffs_mandel_form(q, mandel_q(dist, q2).q);
        CHECK(std::abs(a.u1 - b.u1) <= 1e-12);
        CHECK(std::abs(a.u2 - b.u2) <= 1e-12);
      }
    }
  }
}

TEST_CASE("general_nash worked cases") {
  auto eq = general_nash(CountDistribution::constant_variance(0.8), 3.0);
  CHECK(eq.q1 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(eq.q2 == doctest::Approx(1.0).epsilon(1e-10));

  eq = general_nash(CountDistribution::poisson(), 5.0);
  CHECK(eq.q1 == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(eq.q2 == doctest::Approx(1.0).epsilon(1e-10));

  eq = general_nash(CountDistribution::poisson(), 1.5);
  CHECK(eq.q1 == 0.75);
  CHECK(eq.q2 == 0.0);
  // firm 2's best response to q1 = 0.75 is to produce nothing
  const auto dist = CountDistribution::poisson();
  const double br2 = oracle::grid_argmax(
      [&](double q2) { return classical_payoffs({0.75, q2, 1.5}, dist).u2; }, 0.0, 1.5);
  CHECK(br2 == doctest::Approx(0.0).epsilon(1e-6));
  const double br1 = oracle::grid_argmax(
      [&](double q1) { return classical_payoffs({q1, 0.0, 1.5}, dist).u1; }, 0.0, 1.5);
  CHECK(br1 == doctest::Approx(0.75).epsilon(1e-6));
}

TEST_CASE("general_nash with a shrinking-noise distribution") {
  // Frozen from an independent 30-digit root solve of q = 1 + (4/3) e^{-2q}.
  const auto eq = general_nash(shrinking_noise(), 3.0);
  CHECK(eq.q2 == doctest::Approx(1.13715668747393527).epsilon(1e-10));
  CHECK(eq.q1 == doctest::Approx(0.93142165626303236).epsilon(1e-10));
  CHECK(firm2_advantage(shrinking_noise(), 3.0));
  const auto u = classical_payoffs({eq.q1, eq.q2, 3.0}, shrinking_noise());
  CHECK(u.u1 - u.u2 == doctest::Approx(-0.08875854791633439).epsilon(1e-9));
}

TEST_CASE("general_nash at a variance kink") {
  // Var(q2) = max(4 - 2 q2, 0), k = 3: the condition jumps across q2 = 2, and
  // the equilibrium sits on the kink.
  const auto kinked = CountDistribution::custom(
      [](double q) { return std::max(4.0 - 2.0 * q, 0.0); },
      [](double q) { return q < 2.0 ? -2.0 : 0.0; });
  const auto eq = general_nash(kinked, 3.0);
  CHECK(eq.q2 == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(eq.q1 == doctest::Approx(0.5).epsilon(1e-9));
  // Each quantity is a best response to the other.
  const double br2 = oracle::grid_argmax(
      [&](double q2) { return classical_payoffs({0.5, q2, 3.0}, kinked).u2; }, 0.0, 3.0);
  CHECK(br2 == doctest::Approx(2.0).epsilon(1e-6));
  // Firm 2 ends up ahead.
  const auto u = classical_payoffs({eq.q1, eq.q2, 3.0}, kinked);
  CHECK(u.u1 < u.u2);
  // The advisory derivative check flags the kink without being fatal.
  const std::vector<double> qs{0.5, 1.0, 2.0, 2.5};
  CHECK(derivative_mismatch(kinked, qs) > 1e-6);
}

TEST_CASE("general_nash errors") {
  // Var'' = -6 < -2 everywhere: firm 2's payoff is convex.
  const auto convex = CountDistribution::custom(
      [](double q) { return 50.0 + 3.0 * q - 3.0 * q * q; }, [](double q) { return 3.0 - 6.0 * q; });
  CHECK_THROWS_AS(general_nash(convex, 3.0), DomainError);
  // dVar/dq2 = -10 keeps the condition above q2 everywhere on [0, k].
  const auto runaway =
      CountDistribution::custom([](double q) { return 100.0 - 10.0 * q; }, [](double) { return -10.0; });
  CHECK_THROWS_AS(general_nash(runaway, 3.0), ConvergenceError);
  CHECK_THROWS_AS(general_nash(CountDistribution::poisson(), 0.9), DomainError);
}

TEST_CASE("general_nash is a Nash equilibrium against random deviations") {
  auto r = oracle::rng(7);
  const std::vector<CountDistribution> dists{CountDistribution::poisson(),
                                             CountDistribution::deterministic(),
                                             CountDistribution::constant_variance(1.3),
                                             shrinking_noise()};
  for (const auto& dist : dists) {
    for (double k : {1.0, 2.5, 4.0, 9.0, 17.0}) {
      const auto eq = general_nash(dist, k);
      const auto base = classical_payoffs({eq.q1, eq.q2, k}, dist);
      for (int i = 0; i < 200; ++i) {
        const double dev = oracle::uniform(r, 0.0, k);
        CHECK(classical_payoffs({dev, eq.q2, k}, dist).u1 <= base.u1 + 1e-8);
        CHECK(classical_payoffs({eq.q1, dev, k}, dist).u2 <= base.u2 + 1e-8);
      }
    }
  }
}

TEST_CASE("firm2_advantage") {
  CHECK_FALSE(firm2_advantage(CountDistribution::poisson(), 5.0));
  for (double k : {1.0, 3.0, 12.0}) {
    CHECK_FALSE(firm2_advantage(CountDistribution::deterministic(), k));
  }
}

TEST_CASE("constant variance: firm 1 leads by exactly the variance") {
  for (double sigma_sq : {0.0, 0.25, 1.0, 2.5}) {
    for (double k : {1.0, 3.0, 7.0}) {
      const auto dist = CountDistribution::constant_variance(sigma_sq);
      const auto eq = general_nash(dist, k);
      const auto u = classical_payoffs({eq.q1, eq.q2, k}, dist);
      CHECK(u.u1 - u.u2 == doctest::Approx(sigma_sq).epsilon(1e-9));
      CHECK(u.u1 == doctest::Approx(k * k / 9.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("poisson_case_equilibrium") {
  auto e = poisson_case_equilibrium(4.0);
  CHECK(e.q1 == doctest::Approx(5.0 / 3.0));
  CHECK(e.q2 == doctest::Approx(2.0 / 3.0));
  CHECK(e.u1 == doctest::Approx(25.0 / 9.0));
  CHECK(e.u2 == doctest::Approx(4.0 / 9.0));

  e = poisson_case_equilibrium(2.0);
  CHECK(e.q1 == 1.0);
  CHECK(e.q2 == 0.0);
  CHECK(e.u1 == 1.0);
  CHECK(e.u2 == 0.0);

  e = poisson_case_equilibrium(10.0);
  CHECK(e.q1 == doctest::Approx(11.0 / 3.0));
  CHECK(e.q2 == doctest::Approx(8.0 / 3.0));
  CHECK(e.u1 == doctest::Approx(121.0 / 9.0));
  CHECK(e.u2 == doctest::Approx(64.0 / 9.0));

  // The general solver with realized payoffs reproduces the closed form.
  for (double k = 1.0; k <= 20.0; k += 0.25) {
    const auto dist = CountDistribution::poisson();
    const auto eq = general_nash(dist, k);
    const auto pc = poisson_case_equilibrium(k);
    CHECK(std::abs(eq.q1 - pc.q1) <= 1e-10);
    CHECK(std::abs(eq.q2 - pc.q2) <= 1e-10);
    const auto u = classical_payoffs({eq.q1, eq.q2, k}, dist);
    CHECK(u.u1 == doctest::Approx(pc.u1).epsilon(1e-9));
    CHECK(std::abs(u.u2 - pc.u2) <= 1e-9);
  }
}

TEST_CASE("distribution invariants") {
  const auto p = CountDistribution::poisson();
  const auto d = CountDistribution::deterministic();
  for (double q : {0.0, 0.5, 3.0, 40.0}) {
    CHECK(p.variance(q) == q);
    CHECK(d.variance(q) == 0.0);
  }
  const std::vector<double> qs{0.1, 0.7, 1.5, 3.0, 6.0};
  CHECK(derivative_mismatch(shrinking_noise(), qs) < 1e-6);
  CHECK(derivative_mismatch(p, qs) < 1e-6);
  CHECK_THROWS_AS(CountDistribution::constant_variance(-1.0), DomainError);
}

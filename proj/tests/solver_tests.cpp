#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "engage/solver.hpp"

using namespace engage;

namespace {

ModelParams baseline() { return {0.5, 1.0, 0.0, -0.25, 1.0, 3.0}; }

// Non-trivial parameter draws for property checks.
ModelParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> un(0.0, 1.0);
  for (;;) {
    ModelParams p;
    p.p = 0.95 * un(rng);
    p.v = 0.2 + 2.8 * un(rng);
    p.c_h = un(rng) < 0.3 ? 0.0 : -0.8 * p.v * un(rng);
    p.c_n = -(0.01 + 2.0 * un(rng));
    p.t_a_bar = 0.1 + 4.0 * un(rng);
    p.u0 = 0.5 + 5.0 * un(rng);
    const SolveResult s = solve_threshold(p);
    if (!s.trivial) return p;
  }
}

}  // namespace

TEST_CASE("step_index") {
  CHECK(step_index(-1.0, 2.0) == 0);
  CHECK(step_index(2.3, 1.0) == 2);
  CHECK(step_index(3.0, 3.0) == 1);  // exact multiple lands on the boundary
  CHECK(step_index(0.0, 1.0) == 0);
  // repeated subtraction can drift a hair below the boundary
  double x = 3.0;
  for (int i = 0; i < 10; ++i) x -= 0.3;
  CHECK(step_index(6.0 + x, 3.0) == 2);
  CHECK_THROWS_AS(step_index(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("threshold for the derived baseline") {
  const SolveResult s = solve_threshold(baseline());
  CHECK_FALSE(s.trivial);
  CHECK(s.k_omega == 0);
  CHECK(s.omega == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("thresholds match the two published configurations") {
  const SolveResult a = solve_threshold({0.60, 1.0, 0.0, -0.11, 3.0, 10.0});
  CHECK_FALSE(a.trivial);
  CHECK(a.k_omega == 0);
  CHECK(a.omega == doctest::Approx(0.825).epsilon(1e-9));

  const SolveResult b = solve_threshold({0.85, 1.0, 0.0, -0.11, 3.0, 10.0});
  CHECK_FALSE(b.trivial);
  CHECK(b.k_omega == 0);
  CHECK(b.omega == doctest::Approx(2.2).epsilon(1e-9));
}

TEST_CASE("trivial case when the log argument is non-positive") {
  const SolveResult s = solve_threshold({0.9, 1.0, 0.0, -1.0, 1.0, 3.0});
  CHECK(s.trivial);
  CHECK(std::isinf(s.omega));
  CHECK(s.k_omega == 0);
  CHECK(optimal_wait({2.0, SystemType::Normal}, s) == 0.0);
  CHECK(state_value({2.0, SystemType::Normal}, s) == 0.0);
  CHECK_THROWS_AS(balance_residual(s), std::logic_error);
}

TEST_CASE("k_omega equals 0 implies the simplified threshold formula") {
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    const ModelParams p = random_params(rng);
    const SolveResult s = solve_threshold(p);
    if (s.k_omega != 0) continue;
    const double simple =
        -s.derived.delta * p.c_n / ((p.v + p.c_h) * (1.0 - p.p));
    CHECK(s.omega == doctest::Approx(simple).epsilon(1e-12));
  }
}

TEST_CASE("threshold monotonicity in damage rate and honeypot fraction") {
  // grids chosen to keep k_omega = 0 throughout
  ModelParams p{0.5, 1.0, 0.0, -0.05, 1.0, 3.0};
  double prev = 0.0;
  for (double cn = -0.05; cn >= -0.4; cn -= 0.05) {
    p.c_n = cn;
    const SolveResult s = solve_threshold(p);
    REQUIRE(s.k_omega == 0);
    CHECK(s.omega > prev);
    prev = s.omega;
  }
  // more normal systems raise the threshold, consistent with the published
  // configurations (omega grows from 0.825 at p=0.60 to 2.2 at p=0.85)
  p.c_n = -0.2;
  prev = 0.0;
  for (double frac = 0.2; frac <= 0.7; frac += 0.1) {
    p.p = frac;
    const SolveResult s = solve_threshold(p);
    REQUIRE(s.k_omega == 0);
    CHECK(s.omega > prev);
    prev = s.omega;
  }
}

TEST_CASE("surveillance value examples") {
  const SolveResult s = solve_threshold(baseline());
  CHECK(surveillance_value(0.0, s) == doctest::Approx(0.0));
  CHECK(surveillance_value(2.3, s) == doctest::Approx(1.9).epsilon(1e-12));
  // below the threshold the value is pure honeypot depletion
  CHECK(surveillance_value(0.4, s) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK_THROWS_AS(surveillance_value(-0.5, s), std::invalid_argument);
  CHECK_THROWS_AS(surveillance_value(3.5, s), std::invalid_argument);
}

TEST_CASE("surveillance value satisfies a one-step Bellman check") {
  const SolveResult s = solve_threshold(baseline());
  // continuing from u=2.3 in a honeypot: full-period reward 1, then the
  // attacker lands in N or H at u=1.3
  const double rhs =
      1.0 + 0.5 * state_value({1.3, SystemType::Normal}, s) +
      0.5 * state_value({1.3, SystemType::Honeypot}, s);
  CHECK(surveillance_value(2.3, s) == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("state value cases") {
  const SolveResult s = solve_threshold(baseline());
  CHECK(state_value({1.7, SystemType::Left}, s) == 0.0);
  CHECK(state_value({2.3, SystemType::Normal}, s) ==
        doctest::Approx(1.4).epsilon(1e-12));
  CHECK(state_value({0.4, SystemType::Normal}, s) == 0.0);
  CHECK(state_value({3.0, SystemType::Honeypot}, s) ==
        doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("optimal waiting times") {
  const SolveResult s = solve_threshold(baseline());
  CHECK(optimal_wait({0.4, SystemType::Normal}, s) == 0.0);
  CHECK(optimal_wait({0.8, SystemType::Normal}, s) == doctest::Approx(1.0));
  CHECK(optimal_wait({2.0, SystemType::Honeypot}, s) == doctest::Approx(2.0));
  // tie at u = omega keeps the attacker, value-equivalently
  CHECK(optimal_wait({s.omega, SystemType::Normal}, s) == doctest::Approx(1.0));
  CHECK_THROWS_AS(optimal_wait({1.0, SystemType::Left}, s),
                  std::invalid_argument);
}

TEST_CASE("balance at the threshold") {
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = random_params(rng);
    const SolveResult s = solve_threshold(p);
    CHECK(std::abs(balance_residual(s)) <= 1e-9 * std::max(1.0, p.u0));
  }
}

TEST_CASE("value is bounded and monotone") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> un(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    const ModelParams p = random_params(rng);
    const SolveResult s = solve_threshold(p);
    const double cap = s.derived.chi_h * p.u0;
    double prev_h = 0.0, prev_n = 0.0;
    for (int j = 0; j <= 200; ++j) {
      const double u = p.u0 * j / 200.0;
      const double vh = state_value({u, SystemType::Honeypot}, s);
      const double vn = state_value({u, SystemType::Normal}, s);
      CHECK(vh >= -1e-9 * std::max(1.0, p.u0));
      CHECK(vh <= cap + 1e-9 * std::max(1.0, p.u0));
      CHECK(vn >= 0.0);
      CHECK(vn <= cap + 1e-9 * std::max(1.0, p.u0));
      CHECK(vh >= prev_h - 1e-9);
      CHECK(vn >= prev_n - 1e-9);
      // ordering with the exact gap
      const double gap = std::min(p.t_a_bar * s.derived.lambda_n, vh);
      CHECK(vh - vn == doctest::Approx(gap).epsilon(1e-9));
      prev_h = vh;
      prev_n = vn;
    }
  }
}

TEST_CASE("all-honeypot network extracts chi_h of the residual utility") {
  const ModelParams p{0.0, 1.0, -0.2, -0.5, 1.0, 3.0};
  const SolveResult s = solve_threshold(p);
  for (double u : {0.0, 0.7, 1.5, 2.9}) {
    CHECK(state_value({u, SystemType::Honeypot}, s) ==
          doctest::Approx(s.derived.chi_h * u).epsilon(1e-12));
  }
}

TEST_CASE("threshold dichotomy in normal systems") {
  std::mt19937 rng(31);
  for (int i = 0; i < 60; ++i) {
    const ModelParams p = random_params(rng);
    const SolveResult s = solve_threshold(p);
    const double lo = std::min(s.omega, p.u0);
    for (int j = 1; j <= 20; ++j) {
      const double below = lo * (j - 0.5) / 20.0;
      CHECK(state_value({below, SystemType::Normal}, s) == 0.0);
    }
    if (s.omega < p.u0) {
      for (int j = 1; j <= 20; ++j) {
        const double above =
            s.omega + (p.u0 - s.omega) * (j - 0.25) / 20.0;
        CHECK(state_value({above, SystemType::Normal}, s) > 0.0);
      }
    }
  }
}

TEST_CASE("honeypot value is piecewise linear between its breakpoints") {
  const SolveResult s = solve_threshold(baseline());
  // breakpoints at multiples of delta and at omega plus multiples of delta;
  // midpoints of each open segment must be collinear with the segment ends
  const double delta = s.derived.delta;
  std::vector<double> breaks{0.0};
  for (double b = delta; b < s.params.u0; b += delta) breaks.push_back(b);
  for (double b = s.omega; b < s.params.u0; b += delta) breaks.push_back(b);
  breaks.push_back(s.params.u0);
  std::sort(breaks.begin(), breaks.end());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i] + 1e-6, b = breaks[i + 1] - 1e-6;
    if (b <= a) continue;
    const double mid = 0.5 * (a + b);
    const double interp =
        0.5 * (surveillance_value(a, s) + surveillance_value(b, s));
    CHECK(surveillance_value(mid, s) == doctest::Approx(interp).epsilon(1e-9));
  }
}

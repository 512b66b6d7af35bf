#include "engage/stackelberg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "engage/solver.hpp"

namespace engage {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::DeltaBelowOmega: return "delta_lt_omega";
    case Regime::DeltaAboveOmega: return "delta_gt_omega";
    case Regime::Trivial: return "trivial";
  }
  return "?";
}

namespace {

Regime classify(const SolveResult& s) {
  if (s.trivial) return Regime::Trivial;
  return s.omega > s.derived.delta ? Regime::DeltaBelowOmega
                                   : Regime::DeltaAboveOmega;
}

}  // namespace

double v_bar(double t_a_bar, const ModelParams& base) {
  if (!(t_a_bar > 0.0))
    throw std::invalid_argument("v_bar: t_a_bar must be > 0");
  ModelParams params = base;
  params.t_a_bar = t_a_bar;
  const SolveResult s = solve_threshold(params);
  const double vh = state_value({params.u0, SystemType::Honeypot}, s);
  const double vn = state_value({params.u0, SystemType::Normal}, s);
  return params.p * vn + (1.0 - params.p) * vh;
}

double limit_low(const ModelParams& base) {
  base.validate();
  return base.u0 *
         (1.0 + (base.c_h + base.c_n * base.p / (1.0 - base.p)) / base.v);
}

double value_high(const ModelParams& base) {
  base.validate();
  return base.u0 * (1.0 - base.p) * (base.v + base.c_h) / base.v;
}

double t_omega(const ModelParams& base) {
  const SolveResult s = solve_threshold(base);
  if (s.trivial) return std::numeric_limits<double>::infinity();
  // omega/delta is invariant in t_a_bar: the log argument behind k[omega]
  // contains no t_a_bar, and omega scales linearly through delta.
  const double ratio = s.omega / s.derived.delta;
  return base.u0 / (base.v * ratio);
}

double worst_case_bound(const ModelParams& base) {
  return std::min(limit_low(base), value_high(base));
}

std::vector<double> geometric_grid(double t_min, double t_max,
                                   int points_per_decade) {
  if (!(t_min > 0.0) || !(t_max >= t_min))
    throw std::invalid_argument(
        "geometric_grid: need 0 < t_min <= t_max");
  if (points_per_decade < 1)
    throw std::invalid_argument(
        "geometric_grid: points_per_decade must be >= 1");
  const double decades = std::log10(t_max / t_min);
  const long n =
      std::max(1L, static_cast<long>(std::ceil(decades * points_per_decade)));
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (long i = 0; i <= n; ++i)
    grid.push_back(t_min * std::pow(t_max / t_min,
                                    static_cast<double>(i) /
                                        static_cast<double>(n)));
  grid.back() = t_max;
  return grid;
}

SweepResult sweep(const ModelParams& base, const std::vector<double>& t_grid) {
  if (t_grid.empty())
    throw std::invalid_argument("sweep: t_grid must be non-empty");
  SweepResult result;
  result.samples.reserve(t_grid.size());
  result.min_value = std::numeric_limits<double>::infinity();
  result.t_star = t_grid.front();
  for (double t : t_grid) {
    ModelParams params = base;
    params.t_a_bar = t;
    const SolveResult s = solve_threshold(params);
    const double vh = state_value({params.u0, SystemType::Honeypot}, s);
    const double vn = state_value({params.u0, SystemType::Normal}, s);
    const double value = params.p * vn + (1.0 - params.p) * vh;
    result.samples.push_back({t, value, classify(s)});
    if (value < result.min_value) {
      result.min_value = value;
      result.t_star = t;
    }
  }
  result.limit_low = limit_low(base);
  result.value_high = value_high(base);
  result.t_omega = t_omega(base);
  result.bound = worst_case_bound(base);
  return result;
}

}  // namespace engage

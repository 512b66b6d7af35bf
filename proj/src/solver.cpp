#include "engage/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace engage {

long step_index(double x, double delta) {
  if (!(delta > 0.0))
    throw std::invalid_argument("step_index: delta must be > 0");
  if (!(x >= 0.0)) return 0;  // negative branch, also catches -inf
  const double q = x / delta;
  // Snap exact multiples reached by repeated subtraction, which can land a
  // hair below the boundary.
  const double snap = 1e-9 * std::max(1.0, q);
  return static_cast<long>(std::floor(q + snap));
}

SolveResult solve_threshold(const ModelParams& params) {
  params.validate();
  SolveResult r;
  r.params = params;
  r.derived = derive(params);
  r.trivial = false;
  r.grazing = false;

  const double vch = params.v + params.c_h;
  const double log_arg =
      1.0 + params.p * params.c_n / ((1.0 - params.p) * vch);
  if (log_arg <= 0.0) {
    r.trivial = true;
    r.omega = std::numeric_limits<double>::infinity();
    r.k_omega = 0;
    return r;
  }

  // k[omega] = floor(log_{1-p}(log_arg)); removable singularity at p = 0.
  double steps;
  if (params.p == 0.0)
    steps = -params.c_n / vch;
  else
    steps = std::log(log_arg) / std::log1p(-params.p);
  r.k_omega =
      static_cast<long>(std::floor(steps + 1e-9 * std::max(1.0, steps)));

  const double k = static_cast<double>(r.k_omega);
  const double decay = std::pow(1.0 - params.p, k);
  const double geometric =
      params.p == 0.0 ? k : (1.0 - decay) / (params.p * decay);
  r.omega =
      r.derived.delta * (k + r.derived.lambda_n / (vch * decay) - geometric);

  const double to_breakpoint = std::abs(r.omega - k * r.derived.delta);
  r.grazing = to_breakpoint < 1e-9 * std::max(1.0, r.omega);
  return r;
}

namespace detail {

double surveillance_value_unchecked(double u, const SolveResult& solve) {
  const ModelParams& P = solve.params;
  const DerivedQuantities& d = solve.derived;
  const long k_u = step_index(u, d.delta);
  const long k_over = solve.trivial ? 0 : step_index(u - solve.omega, d.delta);
  const long diff = k_u - k_over;
  const double decay = std::pow(1.0 - P.p, static_cast<double>(diff));
  const double partial =
      d.chi_h * (u - d.delta * static_cast<double>(k_u)) * decay;
  const double geometric = P.p == 0.0
                               ? d.delta1 * static_cast<double>(diff)
                               : (d.delta1 / P.p) * (1.0 - decay);
  const double above =
      static_cast<double>(k_over) * (d.delta1 - P.p * d.lambda_n * P.t_a_bar);
  return partial + geometric + above;
}

}  // namespace detail

namespace {
// Allow grid nodes rounded a hair past u0.
bool in_utility_range(double u, double u0) {
  return u >= -1e-9 && u <= u0 * (1.0 + 1e-9) + 1e-12;
}
}  // namespace

double surveillance_value(double u, const SolveResult& solve) {
  if (!in_utility_range(u, solve.params.u0))
    throw std::invalid_argument(
        "surveillance_value: u must lie in [0, u0]");
  return detail::surveillance_value_unchecked(u, solve);
}

double state_value(const EngagementState& state, const SolveResult& solve) {
  switch (state.s) {
    case SystemType::Left:
      return 0.0;
    case SystemType::Honeypot:
      return surveillance_value(state.u, solve);
    case SystemType::Normal:
      return std::max(surveillance_value(state.u, solve) -
                          solve.params.t_a_bar * solve.derived.lambda_n,
                      0.0);
  }
  return 0.0;
}

double optimal_wait(const EngagementState& state, const SolveResult& solve) {
  switch (state.s) {
    case SystemType::Left:
      throw std::invalid_argument(
          "optimal_wait: no action exists after ejection");
    case SystemType::Honeypot:
      return state.u / solve.params.v;
    case SystemType::Normal:
      // +inf omega in the trivial case makes this uniformly 0.
      return state.u >= solve.omega ? solve.params.t_a_bar : 0.0;
  }
  return 0.0;
}

double balance_residual(const SolveResult& solve) {
  if (solve.trivial)
    throw std::logic_error(
        "balance_residual: no finite threshold in the trivial case");
  return detail::surveillance_value_unchecked(solve.omega, solve) -
         solve.params.t_a_bar * solve.derived.lambda_n;
}

}  // namespace engage

#pragma once

#include "engage/model.hpp"

namespace engage {

// Output of the closed-form threshold computation.
struct SolveResult {
  ModelParams params;
  DerivedQuantities derived;
  bool trivial;   // eject from every normal system immediately
  double omega;   // ejection threshold; +infinity in the trivial case
  long k_omega;   // step_index(omega, delta); 0 in the trivial case
  bool grazing;   // omega within tolerance of a delta-multiple breakpoint
};

// floor(x / delta) for x >= 0, else 0. Snaps exact multiples of delta that
// drift below the boundary by a relative 1e-9.
long step_index(double x, double delta);

SolveResult solve_threshold(const ModelParams& params);

// Expected reward of future surveillance from residual utility u (honeypot
// state value). Rejects u outside [0, u0].
double surveillance_value(double u, const SolveResult& solve);

// 0 for Left, surveillance_value for honeypots, and the surveillance value
// net of expected damage (floored at 0) for normal systems.
double state_value(const EngagementState& state, const SolveResult& solve);

// Optimal defender waiting time: u/v in honeypots, t_a_bar or 0 in normal
// systems depending on u >= omega. Rejects the Left state.
double optimal_wait(const EngagementState& state, const SolveResult& solve);

// surveillance_value(omega) - t_a_bar * lambda_n; zero in exact arithmetic.
// Rejects the trivial case (no finite threshold).
double balance_residual(const SolveResult& solve);

namespace detail {
// Same as surveillance_value but without the [0, u0] range check; used where
// the evaluation point (omega, or a grid node rounded past u0) may exceed u0.
double surveillance_value_unchecked(double u, const SolveResult& solve);
}  // namespace detail

}  // namespace engage

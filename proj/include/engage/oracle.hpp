#pragma once

#include <vector>

#include "engage/model.hpp"

namespace engage {

// Discretization of the residual-utility axis. The step h = delta/m_per_delta
// is commensurate with delta by construction, so honeypot continuations land
// exactly on grid nodes and the recursion needs no interpolation.
struct GridSpec {
  int m_per_delta = 100;
};

struct GridValue {
  double step;                // h
  std::vector<double> v_h;    // value in a honeypot at u = j*h
  std::vector<double> v_n;    // value in a normal system at u = j*h
  int iterations = 0;
  double residual = 0.0;
};

// Single backward pass in increasing u. The normal-system self-reference is
// resolved algebraically: v_n = max{0, v_h - lambda_n * t_a_bar}.
GridValue backward_solve(const ModelParams& params, const GridSpec& grid);

// Value iteration from all-zero tables with the two-action Bellman operator
// (eject now vs continue one attacker period). Structurally independent of
// backward_solve; agreement between the two guards the shared algebra.
GridValue fixed_point_solve(const ModelParams& params, const GridSpec& grid,
                            double tol = 1e-10, int max_iter = 100000);

struct PolicyTable {
  std::vector<bool> continue_in_normal;   // per node: keep the attacker?
  std::vector<double> wait_in_honeypot;   // per node: u_j / v
  double omega_hat;  // smallest node where continuing is optimal; +inf if none
};

PolicyTable extract_policy(const GridValue& gv, const ModelParams& params);

}  // namespace engage

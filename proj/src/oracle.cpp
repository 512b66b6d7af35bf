#include "engage/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace engage {

namespace {

long node_count(double u0, double h) {
  if (u0 <= 0.0) return 0;
  return std::max(0L, static_cast<long>(std::ceil(u0 / h - 1e-9)));
}

void check_grid(const GridSpec& grid) {
  if (grid.m_per_delta < 1)
    throw std::invalid_argument(
        "grid: m_per_delta must be >= 1 (delta must be an exact multiple of "
        "the grid step)");
}

}  // namespace

GridValue backward_solve(const ModelParams& params, const GridSpec& grid) {
  params.validate();
  check_grid(grid);
  const DerivedQuantities d = derive(params);
  const long m = grid.m_per_delta;
  const double h = d.delta / static_cast<double>(m);
  const long n = node_count(params.u0, h);

  GridValue gv;
  gv.step = h;
  gv.v_h.assign(static_cast<std::size_t>(n) + 1, 0.0);
  gv.v_n.assign(static_cast<std::size_t>(n) + 1, 0.0);

  const double risk = d.lambda_n * params.t_a_bar;
  for (long j = 1; j <= n; ++j) {
    const double u = static_cast<double>(j) * h;
    if (j >= m) {
      // attacker moves after a full period; continuation lands m nodes down
      gv.v_h[j] = d.delta1 + params.p * gv.v_n[j - m] +
                  (1.0 - params.p) * gv.v_h[j - m];
    } else {
      // utility depletes before the attacker would move; deplete and eject
      gv.v_h[j] = d.chi_h * u;
    }
    gv.v_n[j] = std::max(0.0, gv.v_h[j] - risk);
  }
  gv.iterations = 1;
  gv.residual = 0.0;
  return gv;
}

GridValue fixed_point_solve(const ModelParams& params, const GridSpec& grid,
                            double tol, int max_iter) {
  params.validate();
  check_grid(grid);
  if (!(tol > 0.0))
    throw std::invalid_argument("fixed_point_solve: tol must be > 0");
  const DerivedQuantities d = derive(params);
  const long m = grid.m_per_delta;
  const double h = d.delta / static_cast<double>(m);
  const long n = node_count(params.u0, h);
  const std::size_t size = static_cast<std::size_t>(n) + 1;

  GridValue gv;
  gv.step = h;
  gv.v_h.assign(size, 0.0);
  gv.v_n.assign(size, 0.0);
  std::vector<double> next_h(size, 0.0), next_n(size, 0.0);

  double residual = std::numeric_limits<double>::infinity();
  int iter = 0;
  while (iter < max_iter) {
    ++iter;
    residual = 0.0;
    for (long j = 1; j <= n; ++j) {
      const double u = static_cast<double>(j) * h;
      // honeypot: wait u/v; the attacker moves first iff t_a_bar <= u/v
      const double vh =
          j >= m ? d.delta1 + params.p * gv.v_n[j - m] +
                       (1.0 - params.p) * gv.v_h[j - m]
                 : d.chi_h * u;
      // normal system: max over {eject now, continue one period}
      const double continue_n = params.c_n * params.t_a_bar +
                                params.p * gv.v_n[j] +
                                (1.0 - params.p) * gv.v_h[j];
      const double vn = std::max(0.0, continue_n);
      residual = std::max(residual, std::abs(vh - gv.v_h[j]));
      residual = std::max(residual, std::abs(vn - gv.v_n[j]));
      next_h[j] = vh;
      next_n[j] = vn;
    }
    gv.v_h.swap(next_h);
    gv.v_n.swap(next_n);
    if (residual < tol) break;
  }
  gv.iterations = iter;
  gv.residual = residual;
  if (residual >= tol && n > 0)
    throw std::runtime_error(
        "fixed_point_solve: no convergence after " + std::to_string(iter) +
        " iterations, final residual " + std::to_string(residual));
  return gv;
}

PolicyTable extract_policy(const GridValue& gv, const ModelParams& params) {
  params.validate();
  const DerivedQuantities d = derive(params);
  const double risk = d.lambda_n * params.t_a_bar;

  PolicyTable table;
  const std::size_t n = gv.v_h.size();
  table.continue_in_normal.resize(n);
  table.wait_in_honeypot.resize(n);
  table.omega_hat = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const double u = static_cast<double>(j) * gv.step;
    table.wait_in_honeypot[j] = u / params.v;
    const bool keep = gv.v_h[j] - risk > 0.0;
    table.continue_in_normal[j] = keep;
    if (keep && std::isinf(table.omega_hat)) table.omega_hat = u;
  }
  return table;
}

}  // namespace engage

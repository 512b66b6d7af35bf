#pragma once

#include <vector>

#include "engage/model.hpp"

namespace engage {

// Which branch of the worst-case dichotomy a sample falls in. The ratio
// omega/delta does not depend on t_a_bar, so all non-trivial samples of one
// parameter set share a regime.
enum class Regime { DeltaBelowOmega, DeltaAboveOmega, Trivial };

const char* regime_name(Regime r);

struct SweepSample {
  double t_a;
  double v_bar;
  Regime regime;
};

struct SweepResult {
  std::vector<SweepSample> samples;  // sorted by t_a
  double t_star;       // grid argmin of v_bar
  double min_value;
  double limit_low;    // analytic limit as t_a_bar -> 0
  double value_high;   // plateau value for large t_a_bar
  double t_omega;      // attacker period at which omega reaches u0; +inf if trivial
  double bound;        // worst-case bound, min of the two limits
};

// Defender's expected value over the random initial system type when the
// attacker moves every t_a_bar seconds: p*V(u0,N) + (1-p)*V(u0,H).
double v_bar(double t_a_bar, const ModelParams& base);

// u0 * (1 + (c_h + c_n * p/(1-p)) / v).
double limit_low(const ModelParams& base);

// u0 * (1-p) * (v + c_h) / v.
double value_high(const ModelParams& base);

// Attacker period making omega equal u0. omega is linear in t_a_bar through
// delta, so this is u0 / (v * omega/delta). +inf in the trivial case.
double t_omega(const ModelParams& base);

double worst_case_bound(const ModelParams& base);

SweepResult sweep(const ModelParams& base, const std::vector<double>& t_grid);

// Geometric grid from t_min to t_max with the given density.
std::vector<double> geometric_grid(double t_min, double t_max,
                                   int points_per_decade);

}  // namespace engage

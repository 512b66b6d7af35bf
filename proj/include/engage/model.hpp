#pragma once

#include <string>
#include <vector>

namespace engage {

enum class SystemType { Honeypot, Normal, Left };

char system_code(SystemType s);  // 'H', 'N' or 'L'

// Primitive constants of the engagement game.
struct ModelParams {
  double p;        // fraction of normal systems, 0 <= p < 1
  double v;        // information-learning rate in honeypots, > 0
  double c_h;      // honeypot maintenance cost rate, <= 0
  double c_n;      // damage rate in normal systems, < 0
  double t_a_bar;  // attacker move period in seconds, > 0
  double u0;       // maximum learnable information, >= 0

  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

// Notation derived from ModelParams; all fields deterministic functions of it.
struct DerivedQuantities {
  double delta;     // t_a_bar * v, utility learned per full attacker period
  double delta1;    // t_a_bar * (v + c_h), net honeypot stage reward
  double lambda_n;  // -c_n / (1 - p), expected damage rate of a normal-system run
  double chi_h;     // (v + c_h) / v, net fraction of residual utility extractable
};

DerivedQuantities derive(const ModelParams& params);

struct EngagementState {
  double u;      // residual utility, in [0, u0]
  SystemType s;
};

struct VulnerabilityEntry {
  double rho;  // exploitation likelihood, in [0, 1]
  double phi;  // cost rate of the vulnerability, < 0
};

// Per-system vulnerability lists used to estimate c_n.
struct VulnerabilityTable {
  std::vector<std::vector<VulnerabilityEntry>> systems;
};

// Mean over systems of the likelihood-weighted vulnerability cost rates.
double aggregate_cn(const VulnerabilityTable& table);

// CSV with header "system,vuln,rho,phi"; rows grouped by system id.
VulnerabilityTable load_vulnerability_table(const std::string& path);

// Residual utility left after t seconds in a honeypot.
double depleted(double u, double t, double v);

// One-stage reward when the defender waits t_d and the attacker waits t_a.
double reward(const EngagementState& state, double t_d, double t_a,
              const ModelParams& params);

// One step of the kernel. The defender ejects if t_a > t_d; otherwise the
// attacker moves to a normal system when draw < p, else to a honeypot.
// Stepping from the absorbing Left state is rejected.
EngagementState transition(const EngagementState& state, double t_d, double t_a,
                           const ModelParams& params, double draw);

}  // namespace engage

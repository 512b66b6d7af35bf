#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "engage/model.hpp"

namespace engage {

inline constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleConfig {
  int m_per_delta = 100;
  double tol = 1e-10;
  int max_iter = 100000;
};

struct SweepConfig {
  double t_min = 1e-3;
  double t_max = 10.0;
  int points_per_decade = 2000;
};

struct SimulateConfig {
  int num_nodes = 20;
  int num_honeypots = 4;
  int num_traces = 5;
  std::uint64_t seed = 1;
};

// Single JSON config file; all blocks except "model" are optional and take
// the defaults above. Exactly one of model.c_n and vuln_table must be given;
// a table path is resolved relative to the config file and aggregated into
// c_n on load.
struct RunConfig {
  ModelParams model{};
  std::optional<std::string> vuln_table;
  OracleConfig oracle;
  SweepConfig sweep;
  SimulateConfig simulate;
  std::string output_dir = ".";

  static RunConfig load(const std::string& path);
  std::string to_json() const;  // echo of the effective configuration
};

}  // namespace engage

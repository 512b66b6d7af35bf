#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "engage/solver.hpp"

namespace engage {

// Node counts are cosmetic rendering metadata; the kernel itself is
// type-level with Bernoulli(p) system draws.
struct NetworkSpec {
  int num_nodes = 20;
  int num_honeypots = 4;
  std::vector<std::string> labels;  // optional, per node

  void validate() const;
};

struct TraceEvent {
  int stage;
  double time;        // wall-clock seconds at the end of the stage
  int node;
  SystemType system;
  double u_before;
  double u_after;
  bool eject;         // defender ejected the attacker this stage
  double reward;
  double cum_utility;
};

struct AttackTrace {
  std::vector<TraceEvent> events;
  bool network_exhausted = false;  // ran out of unvisited nodes of some type
  double total_utility = 0.0;
};

// One full engagement under the optimal policy, attacker moving every
// t_a_bar seconds. Deterministic given (master_seed, trace_index); each
// trace gets its own generator stream.
AttackTrace simulate_trace(const ModelParams& params, const SolveResult& solve,
                           const NetworkSpec& net, std::uint64_t master_seed,
                           std::uint64_t trace_index = 0);

struct EnsembleStats {
  std::size_t num_traces = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double half_width = 0.0;  // 95% normal half-width; NaN when num_traces < 2
};

struct EnsembleResult {
  EnsembleStats stats;
  std::vector<AttackTrace> traces;  // empty unless keep_traces
};

EnsembleResult simulate_ensemble(const ModelParams& params,
                                 const SolveResult& solve,
                                 const NetworkSpec& net,
                                 std::size_t num_traces,
                                 std::uint64_t master_seed,
                                 bool keep_traces = true);

// Rows "stage,time,node,system,u_before,u_after,action,reward,cum_utility",
// numbers rendered with 9 significant digits.
void export_trace(const AttackTrace& trace, std::ostream& out);

}  // namespace engage

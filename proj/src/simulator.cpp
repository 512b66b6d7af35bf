#include "engage/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

namespace engage {

void NetworkSpec::validate() const {
  if (num_nodes < 0 || num_honeypots < 0 || num_honeypots > num_nodes)
    throw std::invalid_argument(
        "network: need 0 <= num_honeypots <= num_nodes");
}

namespace {

// Portable uniform draw in [0, 1); avoids the implementation-defined
// std::uniform_real_distribution so traces are bit-stable across toolchains.
double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

std::mt19937_64 trace_stream(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master),
                    static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// Unvisited node ids of one type; ids become synthetic once the pool drains.
struct NodePool {
  std::vector<int> ids;
  int* synthetic_next;
  bool* exhausted;

  int draw(std::mt19937_64& rng) {
    if (ids.empty()) {
      *exhausted = true;
      return (*synthetic_next)++;
    }
    const std::size_t pick = std::min(
        ids.size() - 1,
        static_cast<std::size_t>(uniform01(rng) * static_cast<double>(ids.size())));
    const int id = ids[pick];
    ids[pick] = ids.back();
    ids.pop_back();
    return id;
  }
};

}  // namespace

AttackTrace simulate_trace(const ModelParams& params, const SolveResult& solve,
                           const NetworkSpec& net, std::uint64_t master_seed,
                           std::uint64_t trace_index) {
  params.validate();
  net.validate();
  auto rng = trace_stream(master_seed, trace_index);

  AttackTrace trace;
  int synthetic_next = net.num_nodes + 1;
  NodePool normal_pool{{}, &synthetic_next, &trace.network_exhausted};
  NodePool honey_pool{{}, &synthetic_next, &trace.network_exhausted};
  const int num_normal = net.num_nodes - net.num_honeypots;
  for (int i = 1; i <= num_normal; ++i) normal_pool.ids.push_back(i);
  for (int i = num_normal + 1; i <= net.num_nodes; ++i)
    honey_pool.ids.push_back(i);

  // Initial system type follows the same Bernoulli(p) weighting as the
  // expected-value objective over initial systems.
  EngagementState state{params.u0, uniform01(rng) < params.p
                                       ? SystemType::Normal
                                       : SystemType::Honeypot};
  double clock = 0.0;
  double cum = 0.0;
  int stage = 0;
  while (true) {
    const int node = (state.s == SystemType::Normal ? normal_pool : honey_pool)
                         .draw(rng);
    const double wait = optimal_wait(state, solve);
    const double t_a = params.t_a_bar;
    const bool eject = t_a > wait;  // tie goes to the attacker's move
    const double stage_reward = reward(state, wait, t_a, params);
    // randomness is consumed only when the attacker actually moves
    const double draw = eject ? 0.0 : uniform01(rng);
    const EngagementState next = transition(state, wait, t_a, params, draw);
    clock += std::min(wait, t_a);
    cum += stage_reward;
    trace.events.push_back({stage, clock, node, state.s, state.u, next.u,
                            eject, stage_reward, cum});
    state = next;
    ++stage;
    if (eject) break;
  }
  trace.total_utility = cum;
  return trace;
}

EnsembleResult simulate_ensemble(const ModelParams& params,
                                 const SolveResult& solve,
                                 const NetworkSpec& net,
                                 std::size_t num_traces,
                                 std::uint64_t master_seed, bool keep_traces) {
  if (num_traces < 1)
    throw std::invalid_argument("simulate_ensemble: num_traces must be >= 1");
  EnsembleResult result;
  if (keep_traces) result.traces.reserve(num_traces);

  // Welford running statistics over final cumulative utilities.
  double mean = 0.0, m2 = 0.0;
  for (std::size_t k = 0; k < num_traces; ++k) {
    AttackTrace trace = simulate_trace(params, solve, net, master_seed, k);
    const double x = trace.total_utility;
    const double d1 = x - mean;
    mean += d1 / static_cast<double>(k + 1);
    m2 += d1 * (x - mean);
    if (keep_traces) result.traces.push_back(std::move(trace));
  }
  result.stats.num_traces = num_traces;
  result.stats.mean = mean;
  if (num_traces >= 2) {
    result.stats.stddev =
        std::sqrt(m2 / static_cast<double>(num_traces - 1));
    result.stats.half_width = 1.959963985 * result.stats.stddev /
                              std::sqrt(static_cast<double>(num_traces));
  } else {
    result.stats.stddev = 0.0;
    result.stats.half_width = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

void export_trace(const AttackTrace& trace, std::ostream& out) {
  out << "stage,time,node,system,u_before,u_after,action,reward,cum_utility\n";
  char buf[256];
  for (const auto& e : trace.events) {
    std::snprintf(buf, sizeof(buf), "%d,%.9g,%d,%c,%.9g,%.9g,%s,%.9g,%.9g\n",
                  e.stage, e.time, e.node, system_code(e.system), e.u_before,
                  e.u_after, e.eject ? "eject" : "continue", e.reward,
                  e.cum_utility);
    out << buf;
  }
}

}  // namespace engage

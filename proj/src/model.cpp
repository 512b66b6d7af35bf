#include "engage/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace engage {

char system_code(SystemType s) {
  switch (s) {
    case SystemType::Honeypot: return 'H';
    case SystemType::Normal: return 'N';
    case SystemType::Left: return 'L';
  }
  return '?';
}

void ModelParams::validate() const {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("invalid model parameters: " + msg);
  };
  if (!(p >= 0.0 && p < 1.0)) fail("p must satisfy 0 <= p < 1");
  if (!(v > 0.0)) fail("v must be > 0");
  if (!(c_h <= 0.0)) fail("c_h must be <= 0");
  if (!(c_n < 0.0)) fail("c_n must be < 0");
  if (!(v + c_h > 0.0)) fail("v + c_h must be > 0");
  if (!(t_a_bar > 0.0)) fail("t_a_bar must be > 0");
  if (!(u0 >= 0.0)) fail("u0 must be >= 0");
}

DerivedQuantities derive(const ModelParams& params) {
  params.validate();
  DerivedQuantities d;
  d.delta = params.t_a_bar * params.v;
  d.delta1 = params.t_a_bar * (params.v + params.c_h);
  d.lambda_n = -params.c_n / (1.0 - params.p);
  d.chi_h = (params.v + params.c_h) / params.v;
  return d;
}

double aggregate_cn(const VulnerabilityTable& table) {
  if (table.systems.empty())
    throw std::invalid_argument("vulnerability table has no systems");
  double total = 0.0;
  for (const auto& sys : table.systems) {
    for (const auto& e : sys) {
      if (!(e.rho >= 0.0 && e.rho <= 1.0))
        throw std::invalid_argument("vulnerability rho must lie in [0, 1]");
      if (!(e.phi < 0.0))
        throw std::invalid_argument("vulnerability phi must be < 0");
      total += e.rho * e.phi;
    }
  }
  return total / static_cast<double>(table.systems.size());
}

namespace {
std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace

VulnerabilityTable load_vulnerability_table(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open vulnerability table: " + path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("vulnerability table is empty: " + path);
  if (trimmed(line) != "system,vuln,rho,phi")
    throw std::runtime_error(
        "vulnerability table header must be 'system,vuln,rho,phi', got '" +
        trimmed(line) + "'");

  // Systems keep first-appearance order.
  VulnerabilityTable table;
  std::map<std::string, std::size_t> index;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    std::istringstream row(line);
    std::string sys, vuln, rho_s, phi_s;
    if (!std::getline(row, sys, ',') || !std::getline(row, vuln, ',') ||
        !std::getline(row, rho_s, ',') || !std::getline(row, phi_s))
      throw std::runtime_error("vulnerability table line " +
                               std::to_string(line_no) + ": expected 4 fields");
    VulnerabilityEntry entry;
    try {
      entry.rho = std::stod(trimmed(rho_s));
      entry.phi = std::stod(trimmed(phi_s));
    } catch (const std::exception&) {
      throw std::runtime_error("vulnerability table line " +
                               std::to_string(line_no) +
                               ": rho and phi must be numeric");
    }
    auto [it, inserted] = index.try_emplace(trimmed(sys), table.systems.size());
    if (inserted) table.systems.emplace_back();
    table.systems[it->second].push_back(entry);
  }
  if (table.systems.empty())
    throw std::runtime_error("vulnerability table has no data rows: " + path);
  return table;
}

double depleted(double u, double t, double v) {
  return std::max(u - v * t, 0.0);
}

double reward(const EngagementState& state, double t_d, double t_a,
              const ModelParams& params) {
  if (t_d < 0.0 || t_a < 0.0)
    throw std::invalid_argument("reward: waiting times must be non-negative");
  const double t = std::min(t_a, t_d);
  switch (state.s) {
    case SystemType::Normal:
      return params.c_n * t;
    case SystemType::Honeypot:
      return std::min(t * params.v, state.u) + params.c_h * t;
    case SystemType::Left:
      return 0.0;
  }
  return 0.0;
}

EngagementState transition(const EngagementState& state, double t_d, double t_a,
                           const ModelParams& params, double draw) {
  if (state.s == SystemType::Left)
    throw std::invalid_argument(
        "transition: engagement already ended (Left is absorbing)");
  if (t_d < 0.0 || t_a < 0.0)
    throw std::invalid_argument(
        "transition: waiting times must be non-negative");
  if (!(draw >= 0.0 && draw < 1.0))
    throw std::invalid_argument("transition: draw must lie in [0, 1)");

  if (t_a > t_d) {  // defender ejects first
    const double u = state.s == SystemType::Honeypot
                         ? depleted(state.u, t_d, params.v)
                         : state.u;
    return {u, SystemType::Left};
  }
  // attacker moves; utility only depletes when leaving a honeypot
  const double u = state.s == SystemType::Honeypot
                       ? depleted(state.u, t_a, params.v)
                       : state.u;
  return {u, draw < params.p ? SystemType::Normal : SystemType::Honeypot};
}

}  // namespace engage

#include "engage/config.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace engage {

namespace {

using nlohmann::json;

double require_number(const json& obj, const std::string& block,
                      const std::string& key) {
  const std::string full = block.empty() ? key : block + "." + key;
  if (!obj.contains(key))
    throw ConfigError("config: missing required key '" + full + "'");
  if (!obj[key].is_number())
    throw ConfigError("config: key '" + full + "' must be a number");
  return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& block,
                 const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw ConfigError("config: key '" + block + "." + key +
                      "' must be a number");
  return obj[key].get<double>();
}

long integer_or(const json& obj, const std::string& block,
                const std::string& key, long fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw ConfigError("config: key '" + block + "." + key +
                      "' must be an integer");
  return obj[key].get<long>();
}

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }

  RunConfig cfg;
  if (!j.contains("model") || !j["model"].is_object())
    throw ConfigError("config: missing required block 'model'");
  const json& model = j["model"];
  cfg.model.p = require_number(model, "model", "p");
  cfg.model.v = require_number(model, "model", "v");
  cfg.model.c_h = number_or(model, "model", "c_h", 0.0);
  cfg.model.t_a_bar = require_number(model, "model", "t_a_bar");
  cfg.model.u0 = require_number(model, "model", "u0");

  const bool has_cn = model.contains("c_n");
  const bool has_table = j.contains("vuln_table");
  if (has_cn == has_table)
    throw ConfigError(
        "config: exactly one of 'model.c_n' and 'vuln_table' must be "
        "provided");
  if (has_cn) {
    cfg.model.c_n = require_number(model, "model", "c_n");
  } else {
    if (!j["vuln_table"].is_string())
      throw ConfigError("config: key 'vuln_table' must be a path string");
    std::filesystem::path table = j["vuln_table"].get<std::string>();
    if (table.is_relative())
      table = std::filesystem::path(path).parent_path() / table;
    cfg.vuln_table = table.string();
    cfg.model.c_n = aggregate_cn(load_vulnerability_table(*cfg.vuln_table));
  }

  if (j.contains("oracle")) {
    const json& oracle = j["oracle"];
    cfg.oracle.m_per_delta = static_cast<int>(
        integer_or(oracle, "oracle", "m_per_delta", cfg.oracle.m_per_delta));
    cfg.oracle.tol = number_or(oracle, "oracle", "tol", cfg.oracle.tol);
    cfg.oracle.max_iter = static_cast<int>(
        integer_or(oracle, "oracle", "max_iter", cfg.oracle.max_iter));
  }
  if (j.contains("sweep")) {
    const json& sweep = j["sweep"];
    cfg.sweep.t_min = number_or(sweep, "sweep", "t_min", cfg.sweep.t_min);
    cfg.sweep.t_max = number_or(sweep, "sweep", "t_max", cfg.sweep.t_max);
    cfg.sweep.points_per_decade =
        static_cast<int>(integer_or(sweep, "sweep", "points_per_decade",
                                    cfg.sweep.points_per_decade));
  }
  if (j.contains("simulate")) {
    const json& sim = j["simulate"];
    cfg.simulate.num_nodes = static_cast<int>(
        integer_or(sim, "simulate", "num_nodes", cfg.simulate.num_nodes));
    cfg.simulate.num_honeypots = static_cast<int>(integer_or(
        sim, "simulate", "num_honeypots", cfg.simulate.num_honeypots));
    cfg.simulate.num_traces = static_cast<int>(
        integer_or(sim, "simulate", "num_traces", cfg.simulate.num_traces));
    cfg.simulate.seed = static_cast<std::uint64_t>(integer_or(
        sim, "simulate", "seed", static_cast<long>(cfg.simulate.seed)));
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string())
      throw ConfigError("config: key 'output_dir' must be a string");
    cfg.output_dir = j["output_dir"].get<std::string>();
  }

  try {
    cfg.model.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

std::string RunConfig::to_json() const {
  json j;
  j["model"] = {{"p", model.p},         {"v", model.v},
                {"c_h", model.c_h},     {"c_n", model.c_n},
                {"t_a_bar", model.t_a_bar}, {"u0", model.u0}};
  if (vuln_table) j["vuln_table_resolved"] = *vuln_table;
  j["oracle"] = {{"m_per_delta", oracle.m_per_delta},
                 {"tol", oracle.tol},
                 {"max_iter", oracle.max_iter}};
  j["sweep"] = {{"t_min", sweep.t_min},
                {"t_max", sweep.t_max},
                {"points_per_decade", sweep.points_per_decade}};
  j["simulate"] = {{"num_nodes", simulate.num_nodes},
                   {"num_honeypots", simulate.num_honeypots},
                   {"num_traces", simulate.num_traces},
                   {"seed", simulate.seed}};
  j["output_dir"] = output_dir;
  j["version"] = kVersion;
  return j.dump(2);
}

}  // namespace engage

#include "bergman/report.hpp"

#include <algorithm>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "bergman/types.hpp"

namespace bergman {

namespace {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"algebra_condition", 1e-14}, {"trace_form", 1e-13},
      {"structure", 1e-13},         {"jacobi", 1e-12},
      {"roots", 1e-8},              {"cartan_exp", 1e-12},
      {"exp_unitarity", 1e-11},     {"kak_recompose", 1e-10},
      {"kak_t", 1e-10},             {"commutator", 1e-12},
      {"represent_unitarity", 1e-11}, {"one_param", 1e-10},
      {"tail", 1e-8},               {"metric_fd", 1e-6},
      {"metric_origin", 1e-12},     {"measure_exact", 1e-12},
      {"metric_inverse", 1e-10},    {"ricci", 1e-5},
      {"einstein", 1e-5},           {"mc_sigmas", 3.0},
      {"kernel_hermitian", 1e-12},  {"kernel_covariance", 1e-9},
      {"cocycle", 1e-10},           {"star_commutator", 1e-7},
      {"slope_window", 0.1},        {"exponent_window", 0.15},
      {"fit_residual", 1e-3},       {"omega", 1e-6},
      {"associativity", 1e-12},     {"covariance_spot", 1e-8},
  };
  return defaults;
}

}  // namespace

double RunConfig::tol(const std::string& key) const {
  if (auto it = tolerances.find(key); it != tolerances.end())
    return it->second;
  const auto& defaults = default_tolerances();
  if (auto it = defaults.find(key); it != defaults.end()) return it->second;
  throw ConfigError("unknown tolerance key: " + key);
}

std::vector<int> RunConfig::n_values() const {
  if (!N_range) return {N};
  std::vector<int> out;
  for (int n = N_range->first; n <= N_range->second; ++n) out.push_back(n);
  return out;
}

void validate_config(const RunConfig& config) {
  if (config.m != 1 && config.m != 2)
    throw ConfigError("config: m must be 1 or 2");
  for (int n : config.n_values())
    if (n < config.m + 1)
      throw ConfigError("config: N = " + std::to_string(n) +
                        " violates the discrete-series bound N >= m+1");
  if (config.M < 2) throw ConfigError("config: M must be >= 2");
  if (config.M_range && (config.M_range->first < 2 ||
                         config.M_range->second < config.M_range->first))
    throw ConfigError("config: bad M range");
  if (config.N_range && config.N_range->second < config.N_range->first)
    throw ConfigError("config: bad N range");
  if (config.format != "json" && config.format != "csv")
    throw ConfigError("config: format must be json or csv");
  if (config.t_steps < 2 || config.t_max <= 0.0)
    throw ConfigError("config: omega scan needs t_max > 0 and t_steps >= 2");
  for (const auto& [key, value] : config.tolerances) {
    if (default_tolerances().find(key) == default_tolerances().end())
      throw ConfigError("config: unknown tolerance key " + key);
    if (value <= 0.0) throw ConfigError("config: tolerance must be positive");
  }
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  if (j.contains("m")) c.m = j.at("m").get<int>();
  if (j.contains("N")) c.N = j.at("N").get<int>();
  if (j.contains("N_range") && !j.at("N_range").is_null()) {
    auto r = j.at("N_range");
    c.N_range = {r.at(0).get<int>(), r.at(1).get<int>()};
  }
  if (j.contains("M")) c.M = j.at("M").get<int>();
  if (j.contains("M_range") && !j.at("M_range").is_null()) {
    auto r = j.at("M_range");
    c.M_range = {r.at(0).get<int>(), r.at(1).get<int>()};
  }
  if (j.contains("adaptive_M")) c.adaptive_M = j.at("adaptive_M").get<bool>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("samples")) c.samples = j.at("samples").get<std::uint64_t>();
  if (j.contains("t_max")) c.t_max = j.at("t_max").get<double>();
  if (j.contains("t_steps")) c.t_steps = j.at("t_steps").get<int>();
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  if (j.contains("format")) c.format = j.at("format").get<std::string>();
  if (j.contains("tolerances"))
    for (const auto& [key, value] : j.at("tolerances").items())
      c.tolerances[key] = value.get<double>();
  return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["m"] = c.m;
  j["N"] = c.N;
  j["N_range"] = c.N_range ? nlohmann::json{c.N_range->first, c.N_range->second}
                           : nlohmann::json();
  j["M"] = c.M;
  j["M_range"] = c.M_range ? nlohmann::json{c.M_range->first, c.M_range->second}
                           : nlohmann::json();
  j["adaptive_M"] = c.adaptive_M;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["t_max"] = c.t_max;
  j["t_steps"] = c.t_steps;
  j["out"] = c.out;
  j["format"] = c.format;
  j["tolerances"] = c.tolerances;
  return j;
}

ReportRow& Report::add(ReportRow row) {
  rows.push_back(std::move(row));
  return rows.back();
}

void Report::finalize() {
  std::sort(rows.begin(), rows.end(),
            [](const ReportRow& a, const ReportRow& b) { return a.name < b.name; });
  pass = true;
  for (const auto& r : rows) pass = pass && r.pass;
  version = kVersion;
}

nlohmann::json report_to_json(const Report& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json row = {{"name", r.name},         {"value", r.value},
                          {"reference", r.reference}, {"residual", r.residual},
                          {"tolerance", r.tolerance}, {"pass", r.pass}};
    if (!r.note.empty()) row["note"] = r.note;
    if (!r.point.empty()) row["point"] = r.point;
    rows.push_back(row);
  }
  return nlohmann::json{{"config", config_to_json(report.config)},
                        {"rows", rows},
                        {"pass", report.pass},
                        {"wall_ms", 0},
                        {"version", kVersion}};
}

namespace {
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string report_to_csv(const Report& report) {
  std::string out = "name,value,reference,residual,tolerance,pass\n";
  for (const auto& r : report.rows)
    out += r.name + "," + fmt(r.value) + "," + fmt(r.reference) + "," +
           fmt(r.residual) + "," + fmt(r.tolerance) + "," +
           (r.pass ? "1" : "0") + "\n";
  return out;
}

std::string report_to_point_csv(const Report& report) {
  std::string out = "point,quantity,value,reference,residual\n";
  for (const auto& r : report.rows)
    out += r.point + "," + r.name + "," + fmt(r.value) + "," +
           fmt(r.reference) + "," + fmt(r.residual) + "\n";
  return out;
}

}  // namespace bergman

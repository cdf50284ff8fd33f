// bergman: command-line driver.
//
// Exit codes: 0 all checks pass, 1 check failure, 2 usage/config error.
// The JSON report goes to stdout; --out writes the report (json) or the
// command's table (csv).  Measured wall time is printed to stderr so that
// serialized reports stay byte-identical across runs.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bergman/commands.hpp"
#include "bergman/report.hpp"
#include "bergman/types.hpp"

namespace {

struct Flags {
  std::optional<std::string> config_path;
  std::optional<int> m, N, M, t_steps;
  std::optional<std::string> n_range, m_range, out, format;
  std::optional<std::uint64_t> seed, samples;
  std::optional<double> t_max;
  bool adaptive = false;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path,
                  "JSON config file mirroring the run configuration");
  cmd->add_option("--m", f.m, "rank (1 or 2)");
  cmd->add_option("--N", f.N, "representation label (N >= m+1)");
  cmd->add_option("--N-range", f.n_range, "inclusive range a:b");
  cmd->add_option("--M", f.M, "Fock truncation (max total a-quanta)");
  cmd->add_option("--M-range", f.m_range, "inclusive range a:b (sweep)");
  cmd->add_flag("--adaptive-M", f.adaptive, "escalate M until tails converge");
  cmd->add_option("--seed", f.seed, "RNG seed (stochastic rows)");
  cmd->add_option("--samples", f.samples, "Monte-Carlo sample count");
  cmd->add_option("--t-max", f.t_max, "omega-scan: largest t");
  cmd->add_option("--t-steps", f.t_steps, "omega-scan: number of t values");
  cmd->add_option("--out", f.out, "output file");
  cmd->add_option("--format", f.format, "output format: json or csv");
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw bergman::ConfigError("range must look like a:b, got " + s);
  try {
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw bergman::ConfigError("range must look like a:b, got " + s);
  }
}

bergman::RunConfig assemble_config(
    const Flags& f, const std::map<std::string, double>& tol_overrides) {
  bergman::RunConfig config;
  if (f.config_path) {
    std::ifstream in(*f.config_path);
    if (!in) throw bergman::ConfigError("cannot open config file " +
                                        *f.config_path);
    try {
      nlohmann::json j;
      in >> j;
      config = bergman::config_from_json(j);
    } catch (const nlohmann::json::exception& e) {
      throw bergman::ConfigError(std::string("bad config file: ") + e.what());
    }
  }
  if (f.m) config.m = *f.m;
  if (f.N) config.N = *f.N;
  if (f.n_range) config.N_range = parse_range(*f.n_range);
  if (f.M) config.M = *f.M;
  if (f.m_range) config.M_range = parse_range(*f.m_range);
  if (f.adaptive) config.adaptive_M = true;
  if (f.seed) config.seed = *f.seed;
  if (f.samples) config.samples = *f.samples;
  if (f.t_max) config.t_max = *f.t_max;
  if (f.t_steps) config.t_steps = *f.t_steps;
  if (f.out) config.out = *f.out;
  if (f.format) config.format = *f.format;
  for (const auto& [key, value] : tol_overrides)
    config.tolerances[key] = value;
  return config;
}

int emit(const bergman::CommandOutput& result) {
  const nlohmann::json j = bergman::report_to_json(result.report);
  std::cout << j.dump(2) << "\n";
  const auto& config = result.report.config;
  if (!config.out.empty()) {
    std::ofstream file(config.out, std::ios::binary);
    if (!file)
      throw bergman::ConfigError("cannot write output file " + config.out);
    if (config.format == "csv")
      file << result.table_csv;
    else
      file << j.dump(2) << "\n";
  }
  return result.report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  // --tol-KEY=VAL flags are collected before CLI11 sees the argv.
  std::vector<std::string> args;
  std::map<std::string, double> tol_overrides;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--tol-", 0) == 0) {
      const auto eq = arg.find('=');
      if (eq == std::string::npos || eq <= 6) {
        std::cerr << "bad tolerance flag (expected --tol-KEY=VAL): " << arg
                  << "\n";
        return 2;
      }
      try {
        tol_overrides[arg.substr(6, eq - 6)] = std::stod(arg.substr(eq + 1));
      } catch (const std::exception&) {
        std::cerr << "bad tolerance value in " << arg << "\n";
        return 2;
      }
      continue;
    }
    args.push_back(arg);
  }

  CLI::App app{
      "bergman: coherent-state quantization of the rank-one Bergman domain"};
  app.require_subcommand(1);

  Flags flags;
  CLI::App* verify_algebra = app.add_subcommand(
      "verify-algebra", "Lie algebra / Fock / oscillator invariant suite");
  CLI::App* verify_geometry = app.add_subcommand(
      "verify-geometry", "kernel, metric, Einstein and measure checks");
  CLI::App* star_table = app.add_subcommand(
      "star-table", "star products of coordinate functions over an N range");
  CLI::App* omega_scan = app.add_subcommand(
      "omega-scan", "base-state matrix element of T(a_t) against closed forms");
  CLI::App* sweep =
      app.add_subcommand("sweep", "N x M grid of residuals and tails");
  for (CLI::App* cmd :
       {verify_algebra, verify_geometry, star_table, omega_scan, sweep})
    add_common_flags(cmd, flags);

  // CLI11 wants argv-style reversed vector for parse(args).
  std::vector<std::string> rargs(args.rbegin(), args.rend());
  try {
    app.parse(rargs);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const bergman::RunConfig config = assemble_config(flags, tol_overrides);
    const auto start = std::chrono::steady_clock::now();
    bergman::CommandOutput result;
    if (verify_algebra->parsed())
      result = bergman::cmd_verify_algebra(config);
    else if (verify_geometry->parsed())
      result = bergman::cmd_verify_geometry(config);
    else if (star_table->parsed())
      result = bergman::cmd_star_table(config);
    else if (omega_scan->parsed())
      result = bergman::cmd_omega_scan(config);
    else
      result = bergman::cmd_sweep(config);
    const auto stop = std::chrono::steady_clock::now();
    result.report.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(stop - start)
            .count();
    std::fprintf(stderr, "wall_ms=%lld\n",
                 static_cast<long long>(result.report.wall_ms));
    return emit(result);
  } catch (const bergman::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const bergman::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

// bergman: run configuration and check reports for the CLI driver.
//
// Reports are deterministic for a fixed (config, seed): rows are emitted
// sorted by name, numbers are serialized with round-trip precision, and the
// wall_ms field is written as 0 in serialized output (measured wall time
// goes to stderr) so repeated runs are byte-identical.
#ifndef BERGMAN_REPORT_HPP
#define BERGMAN_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace bergman {

struct RunConfig {
  int m = 2;
  int N = 3;
  std::optional<std::pair<int, int>> N_range;  // inclusive
  int M = 4;
  std::optional<std::pair<int, int>> M_range;  // inclusive (sweep)
  bool adaptive_M = false;
  std::uint64_t seed = 20240901ull;
  std::uint64_t samples = 1000000ull;
  double t_max = 1.2;   // omega-scan
  int t_steps = 13;     // omega-scan
  std::string out;      // output file ("" = stdout only)
  std::string format = "json";  // "json" | "csv"
  std::map<std::string, double> tolerances;

  /// Tolerance by key, falling back to the library defaults table.
  double tol(const std::string& key) const;
  std::vector<int> n_values() const;  // N_range expanded, or {N}
};

/// Throws ConfigError on invalid settings (N below the series bound, M < 2,
/// unknown format, bad ranges).
void validate_config(const RunConfig& config);

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

struct ReportRow {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
  std::string point;  // geometry rows carry the sample point
};

struct Report {
  RunConfig config;
  std::vector<ReportRow> rows;
  bool pass = true;
  long long wall_ms = 0;  // measured; serialized as 0 for byte-stable output
  std::string version;

  ReportRow& add(ReportRow row);
  void finalize();  // sorts rows by name, recomputes aggregate pass
};

nlohmann::json report_to_json(const Report& report);
std::string report_to_csv(const Report& report);

/// Geometry schema: point,quantity,value,reference,residual.
std::string report_to_point_csv(const Report& report);

}  // namespace bergman

#endif

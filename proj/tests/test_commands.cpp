#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "bergman/commands.hpp"
#include "bergman/report.hpp"
#include "bergman/types.hpp"

using namespace bergman;

TEST_CASE("config: JSON round trip and flag semantics") {
  RunConfig c;
  c.m = 1;
  c.N = 4;
  c.N_range = {4, 9};
  c.M = 6;
  c.M_range = {3, 7};
  c.adaptive_M = true;
  c.seed = 99;
  c.samples = 1234;
  c.out = "x.json";
  c.format = "csv";
  c.tolerances["commutator"] = 1e-10;
  const RunConfig back = config_from_json(config_to_json(c));
  CHECK(back.m == c.m);
  CHECK(back.N == c.N);
  CHECK(back.N_range == c.N_range);
  CHECK(back.M_range == c.M_range);
  CHECK(back.adaptive_M == c.adaptive_M);
  CHECK(back.seed == c.seed);
  CHECK(back.samples == c.samples);
  CHECK(back.format == c.format);
  CHECK(back.tol("commutator") == 1e-10);
  // default fallback for keys not overridden
  CHECK(back.tol("einstein") == 1e-5);
  CHECK_THROWS_AS(back.tol("no_such_key"), ConfigError);
}

TEST_CASE("config validation") {
  RunConfig c;
  c.m = 2;
  c.N = 2;  // violates N >= m+1
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.N = 3;
  c.M = 1;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.M = 4;
  c.format = "yaml";
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.format = "json";
  c.tolerances["bogus"] = 1.0;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.tolerances.clear();
  c.tolerances["commutator"] = -1.0;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.tolerances.clear();
  CHECK_NOTHROW(validate_config(c));
  c.N_range = {8, 4};
  CHECK_THROWS_AS(validate_config(c), ConfigError);
}

TEST_CASE("verify-algebra: default config passes, M = 2 still tests") {
  RunConfig c;
  c.m = 2;
  c.N = 3;
  c.M = 4;
  const CommandOutput out = cmd_verify_algebra(c);
  CHECK(out.report.pass);
  CHECK(out.report.version == std::string(kVersion));
  CHECK(out.report.rows.size() > 12);
  // rows sorted by name
  for (std::size_t i = 1; i < out.report.rows.size(); ++i)
    CHECK(out.report.rows[i - 1].name < out.report.rows[i].name);

  RunConfig small = c;
  small.M = 2;  // interior layer M-1 = 1 is nonempty
  CHECK(cmd_verify_algebra(small).report.pass);

  RunConfig m1 = c;
  m1.m = 1;
  m1.N = 2;
  CHECK(cmd_verify_algebra(m1).report.pass);
}

TEST_CASE("verify-algebra rejects N below the discrete-series bound") {
  RunConfig c;
  c.m = 2;
  c.N = 2;
  CHECK_THROWS_AS(cmd_verify_algebra(c), ConfigError);
}

TEST_CASE("verify-geometry: stochastic rows pass at modest sample counts") {
  RunConfig c;
  c.m = 2;
  c.N = 4;
  c.samples = 60000;
  c.seed = 123;
  const CommandOutput out = cmd_verify_geometry(c);
  CHECK(out.report.pass);
  // geometry table schema
  CHECK(out.table_csv.rfind("point,quantity,value,reference,residual\n", 0) ==
        0);
}

TEST_CASE("star-table: range requirements and CSV header") {
  // The commutative-limit deviation is exactly proportional to (N+1)/N^2,
  // so the fitted slope approaches -1 from below only over the full
  // canonical range N in {4..24}; shorter low-N windows sit outside the
  // +-0.1 acceptance band by design, not by accident.
  RunConfig c;
  c.m = 1;
  c.N_range = {4, 24};
  c.adaptive_M = true;
  c.seed = 7;
  const CommandOutput out = cmd_star_table(c);
  CHECK(out.report.pass);
  CHECK(out.table_csv.rfind("N,A_N,B_N,residual,slope\n", 0) == 0);

  RunConfig bad = c;
  bad.N_range = {4, 6};  // only 3 values
  CHECK_THROWS_AS(cmd_star_table(bad), ConfigError);
}

TEST_CASE("omega-scan reports the matched family") {
  RunConfig c;
  c.m = 2;
  c.N = 3;
  c.t_steps = 7;
  const CommandOutput out = cmd_omega_scan(c);
  CHECK(out.report.pass);
  bool found = false;
  for (const auto& row : out.report.rows)
    if (row.name == "omega.010_family_match") {
      found = true;
      CHECK(row.note.find("p = 4") != std::string::npos);
      CHECK(row.pass);
    }
  CHECK(found);
  CHECK(out.table_csv.rfind("t,omega_re,omega_im,reference,residual\n", 0) ==
        0);
}

TEST_CASE("sweep emits the N x M grid") {
  RunConfig c;
  c.m = 1;
  c.N = 2;
  c.N_range = {2, 4};
  c.M_range = {3, 6};
  c.seed = 3;
  const CommandOutput out = cmd_sweep(c);
  CHECK(out.report.pass);
  CHECK(out.table_csv.rfind("N,M,dim,commutator_residual,tail\n", 0) == 0);
  // 3 N-values x 4 M-values data lines + header
  CHECK(std::count(out.table_csv.begin(), out.table_csv.end(), '\n') ==
        1 + 12);
}

TEST_CASE("reports are byte-deterministic for fixed config and seed") {
  RunConfig c;
  c.m = 2;
  c.N = 4;
  c.samples = 20000;
  c.seed = 77;
  const auto first = report_to_json(cmd_verify_geometry(c).report).dump(2);
  const auto second = report_to_json(cmd_verify_geometry(c).report).dump(2);
  CHECK(first == second);

  RunConfig st;
  st.m = 1;
  st.N_range = {4, 8};
  st.seed = 5;
  const CommandOutput a = cmd_star_table(st);
  const CommandOutput b = cmd_star_table(st);
  CHECK(report_to_json(a.report).dump(2) == report_to_json(b.report).dump(2));
  CHECK(a.table_csv == b.table_csv);
  // serialized wall_ms is pinned to zero
  CHECK(report_to_json(a.report)["wall_ms"] == 0);
}

TEST_CASE("report CSV serialization carries all row fields") {
  RunConfig c;
  c.m = 1;
  c.N = 2;
  c.M = 3;
  const Report rep = cmd_verify_algebra(c).report;
  const std::string csv = report_to_csv(rep);
  CHECK(csv.rfind("name,value,reference,residual,tolerance,pass\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        1 + static_cast<long>(rep.rows.size()));
}

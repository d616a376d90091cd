/* Copyright 2026 The Redctl Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "redctl/bloch.hpp"
#include "redctl/cli.hpp"
#include "redctl/io.hpp"

using namespace redctl;
namespace fs = std::filesystem;

namespace {

std::string binary() {
  const char* b = std::getenv("REDCTL_BIN");
  return b ? b : "./redctl";
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("redctl_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path write_config(const std::string& name, const json& j) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << j.dump();
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = "REDCTL_OUTPUT_DIR=" + scratch().string() + " " + binary() + " " + args +
                          " > " + (scratch() / "stdout.txt").string() + " 2> " +
                          (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config parsing and overrides") {
  using namespace redctl::cli;
  const json raw = {{"dt", 0.01}, {"T", 2.0}, {"seed", 5}, {"out", "a.csv"}};
  const RunConfig c = make_config("bloch", raw, {});
  CHECK(c.dt == 0.01);
  CHECK(c.T == 2.0);
  CHECK(c.seed == 5);
  Overrides ov;
  ov.seed = 9;
  ov.dt = 0.5;
  ov.out = "b.csv";
  const RunConfig o = make_config("bloch", raw, ov);
  CHECK(o.seed == 9);
  CHECK(o.dt == 0.5);
  CHECK(o.out == "b.csv");
  CHECK_THROWS_AS(make_config("bloch", {{"dt", 0.0}}, {}), ConfigError);
  CHECK_THROWS_AS(make_config("bloch", {{"T", -1.0}}, {}), ConfigError);
  CHECK_THROWS_AS(make_config("bloch", {{"dt", "fast"}}, {}), ConfigError);
  CHECK_THROWS_AS(make_config("fly", json::object(), {}), ConfigError);
}

TEST_CASE("pair and drift descriptors") {
  const auto pair = parse_pair({{"kind", "real_svd"}, {"p", 3}, {"q", 2}});
  CHECK(parse_pair(pair_to_json(pair)).coord_dim() == 2);
  CHECK(parse_pair({{"type", "polar"}, {"n", 2}}).coord_dim() == 1);
  CHECK_THROWS_AS(parse_pair({{"kind", "torus"}}), ShapeError);

  const auto evd = parse_pair({{"kind", "hermitian_evd"}, {"n", 2}});
  const int d = evd.ambient_dim();
  json flat = json::array(), rows = json::array();
  for (int i = 0; i < d; ++i) {
    json row = json::array();
    for (int j = 0; j < d; ++j) {
      flat.push_back(i * d + j);
      row.push_back(i * d + j);
    }
    rows.push_back(row);
  }
  const DriftField a = parse_drift(evd, {{"kind", "affine"}, {"matrix", flat}});
  const DriftField b = parse_drift(evd, {{"kind", "affine"}, {"matrix", rows}});
  const PPoint p = embed(evd, Vec::LinSpaced(2, 0.7, -0.7));
  CHECK((a(evd, p).m - b(evd, p).m).norm() == 0.0);
  flat.erase(0);
  CHECK_THROWS_AS(parse_drift(evd, {{"kind", "affine"}, {"matrix", flat}}), ShapeError);
}

TEST_CASE("bloch table contains the switching time") {
  const fs::path cfg = write_config("bloch.json", {{"Gamma", 3.0}, {"T", 1.0}});
  REQUIRE(run_cli("bloch --config " + cfg.string() + " --dt 1e-3 --out bloch.csv") == 0);
  const CsvTable t = read_csv((scratch() / "bloch.csv").string());
  const double t0 = BlochParams::make(3.0).t0();
  bool found = false;
  for (const auto& row : t.rows)
    if (row[t.column("t")] == t0) {
      found = true;
      CHECK(std::abs(row[t.column("a_star")] + 0.25) < 1e-9);
    }
  CHECK(found);
  CHECK(fs::exists(scratch() / "bloch.json"));
}

TEST_CASE("majorize reports the verdict") {
  const fs::path cfg =
      write_config("maj.json", {{"pair", {{"kind", "hermitian_evd"}, {"n", 3}}},
                                {"a", {1, 0, -1}},
                                {"b", {0.5, 0, -0.5}}});
  REQUIRE(run_cli("majorize --config " + cfg.string()) == 0);
  const json out = json::parse(slurp(scratch() / "stdout.txt"));
  CHECK(out.at("majorizes") == true);
}

TEST_CASE("simulate-full with zero horizon returns the initial state") {
  const fs::path cfg = write_config(
      "full0.json", {{"pair", {{"kind", "polar"}, {"n", 2}}},
                     {"drift", {{"kind", "bloch"}, {"Gamma", 3.0}}},
                     {"a0", {0.5}},
                     {"T", 0.0}});
  REQUIRE(run_cli("simulate-full --config " + cfg.string() + " --out full0.csv") == 0);
  const CsvTable t = read_csv((scratch() / "full0.csv").string());
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][t.column("p1")] == 0.0);
  CHECK(t.rows[0][t.column("p2")] == 0.5);
}

TEST_CASE("identical configuration gives identical bytes") {
  const json base = {{"pair", {{"kind", "hermitian_evd"}, {"n", 3}}},
                     {"drift", {{"kind", "relax"}, {"target", {2.0, 0.5, -2.5}}}},
                     {"a0", {1.0, 0.0, -1.0}},
                     {"T", 0.3},
                     {"dt", 1e-2},
                     {"selector", {{"kind", "random"}, {"samples", 32}}}};
  const fs::path cfg = write_config("det.json", base);
  REQUIRE(run_cli("simulate-reduced --config " + cfg.string() + " --seed 4 --out d1.csv") == 0);
  REQUIRE(run_cli("simulate-reduced --config " + cfg.string() + " --seed 4 --out d2.csv") == 0);
  CHECK(slurp(scratch() / "d1.csv") == slurp(scratch() / "d2.csv"));
  CHECK(slurp(scratch() / "d1.json") == slurp(scratch() / "d2.json"));
  REQUIRE(run_cli("simulate-reduced --config " + cfg.string() + " --seed 5 --out d3.csv") == 0);
  CHECK(slurp(scratch() / "d1.csv") != slurp(scratch() / "d3.csv"));
}

TEST_CASE("projected artifacts round-trip") {
  const json pair = {{"kind", "hermitian_evd"}, {"n", 3}};
  const json drift = {{"kind", "relax"}, {"target", {2.0, 0.5, -2.5}}};
  const fs::path full = write_config(
      "rt_full.json", {{"pair", pair}, {"drift", drift}, {"a0", {1.0, 0.0, -1.0}}, {"T", 0.2},
                       {"dt", 1e-3}, {"controls", {{"switch_dt", 0.05}}}, {"seed", 2}});
  REQUIRE(run_cli("simulate-full --config " + full.string() + " --out rt_full.csv") == 0);
  const fs::path proj = write_config(
      "rt_proj.json", {{"pair", pair}, {"drift", drift}, {"input", "rt_full.csv"},
                       {"residual", {{"samples", 64}}}});
  REQUIRE(run_cli("project --config " + proj.string() + " --out rt_p1.csv") == 0);
  REQUIRE(run_cli("project --config " + proj.string() + " --out rt_p2.csv") == 0);
  CHECK(slurp(scratch() / "rt_p1.json") == slurp(scratch() / "rt_p2.json"));
  const json summary = json::parse(slurp(scratch() / "rt_p1.json"));
  CHECK(summary.at("residual").at("fraction_within").get<double>() >= 0.99);

  // The projected table reads back to the same values.
  const CsvTable t = read_csv((scratch() / "rt_p1.csv").string());
  CHECK(csv_string(t) == slurp(scratch() / "rt_p1.csv"));
}

TEST_CASE("exit codes") {
  CHECK(run_cli("nonsense") == 2);
  CHECK(run_cli("bloch --config " + (scratch() / "missing.json").string()) == 2);
  const fs::path bad = write_config("bad.json", {{"dt", -1.0}});
  CHECK(run_cli("bloch --config " + bad.string()) == 2);
  const fs::path shape = write_config(
      "shape.json", {{"pair", {{"kind", "hermitian_evd"}, {"n", 3}}}, {"a", {1, 0}}, {"b", {1, 0, -1}}});
  CHECK(run_cli("majorize --config " + shape.string()) == 2);
  // A wall crossing makes the regular lift fail numerically.
  const fs::path traj = scratch() / "cross.csv";
  std::ofstream(traj) << "t,a1,a2\n0,1,-1\n0.1,0.5,-0.5\n0.2,-0.5,0.5\n0.3,-1,1\n";
  const fs::path lift = write_config(
      "lift.json", {{"pair", {{"kind", "hermitian_evd"}, {"n", 2}}},
                    {"drift", {{"kind", "scaled_identity"}, {"s", -1.0}}},
                    {"input", traj.string()}});
  CHECK(run_cli("lift --config " + lift.string()) == 3);
  const fs::path st = write_config("self.json", {{"criteria", {7}}});
  CHECK(run_cli("selftest --config " + st.string()) == 0);
}

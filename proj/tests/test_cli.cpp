// Copyright 2026 The betadet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "betadet/sampler.hpp"

#ifndef BETADET_CLI_PATH
#error "BETADET_CLI_PATH must be defined"
#endif

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(BETADET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("seeded commands are byte-deterministic") {
  const std::string base =
      " --ensemble laguerre --beta 2 --n 50 --samples 40000 --seed 99 --threads 2 --out ";
  CHECK(run("mc-laplace" + base + "/tmp/cli_a.csv") == 0);
  CHECK(run("mc-laplace" + base + "/tmp/cli_b.csv") == 0);
  const auto a = slurp("/tmp/cli_a.csv"), b = slurp("/tmp/cli_b.csv");
  CHECK(!a.empty());
  CHECK(a == b);
  CHECK(run("mc-laplace" + base + "/tmp/cli_a.json --format json") == 0);
  CHECK(run("mc-laplace" + base + "/tmp/cli_b.json --format json") == 0);
  CHECK(slurp("/tmp/cli_a.json") == slurp("/tmp/cli_b.json"));
  // A different seed changes the bytes.
  CHECK(run(
            "mc-laplace --ensemble laguerre --beta 2 --n 50 --samples 40000 --seed 100 "
            "--threads 2 --out /tmp/cli_c.csv") == 0);
  CHECK(slurp("/tmp/cli_c.csv") != a);
}

TEST_CASE("json output round-trips the mc result exactly") {
  CHECK(run("mc-laplace --ensemble gram --beta 4 --n 20 --samples 30000 --seed 7 --threads 2 "
            "--z 0.7 --z 1.1 --format json --out /tmp/cli_rt.json") == 0);
  const auto doc = nlohmann::json::parse(slurp("/tmp/cli_rt.json"));
  const auto spec = betadet::EnsembleSpec::gram(20, betadet::BetaParam(4.0));
  const auto r = betadet::mc_run(spec, 30000, {0.7, 1.1}, {}, {}, 7, 2);
  const auto& jr = doc["mc_result"];
  CHECK(jr["n_samples"].get<std::int64_t>() == r.n_samples);
  CHECK(jr["mean"].get<double>() == r.mean);
  CHECK(jr["variance"].get<double>() == r.variance);
  CHECK(jr["kolmogorov_distance"].get<double>() == r.kolmogorov_distance);
  for (std::size_t i = 0; i < r.empirical_laplace.size(); ++i) {
    CHECK(jr["empirical_laplace"][i]["z"].get<double>() == r.empirical_laplace[i].z);
    CHECK(jr["empirical_laplace"][i]["value"].get<double>() == r.empirical_laplace[i].value);
    CHECK(jr["empirical_laplace"][i]["std_err"].get<double>() == r.empirical_laplace[i].std_err);
  }
}

TEST_CASE("psi-table: convergence in n, exact unity at z = 0") {
  CHECK(run("psi-table --ensemble laguerre --beta 2 --n 100 --n 1000 --n 10000 --z 0.5 --z 0 "
            "--out /tmp/cli_psi.csv") == 0);
  const auto rows = csv_rows(slurp("/tmp/cli_psi.csv"));
  REQUIRE(rows.size() == 7);  // header + 3 n * 2 z
  // abs_diff strictly decreasing for z = 0.5 rows (1, 3, 5).
  const double d100 = std::stod(rows[1][4]);
  const double d1000 = std::stod(rows[3][4]);
  const double d10000 = std::stod(rows[5][4]);
  CHECK(d100 > d1000);
  CHECK(d1000 > d10000);
  // z = 0 rows are exactly 1.
  CHECK(std::stod(rows[2][2]) == 1.0);
  CHECK(std::stod(rows[2][3]) == 1.0);
  CHECK(std::stod(rows[2][4]) == 0.0);
}

TEST_CASE("usage and parameter errors exit nonzero with a diagnostic") {
  CHECK(run("psi-table --ensemble laguerre --beta 2 --z 0.5") != 0);  // empty n list
  CHECK(run("psi-table --ensemble laguerre --beta 2 --n 100 --z -2.0") == 2);  // strip violation
  // Complex delta cannot be sampled; exact transforms still cover it.
  CHECK(run("mc-laplace --ensemble circular-jacobi --beta 2 --n 8 --delta-re 0.2 "
            "--delta-im 0.4 --samples 1000 --seed 1") == 2);
  CHECK(run("definitely-not-a-command") != 0);
  CHECK(run("mc-berry-esseen --ensemble laguerre --beta 2 --n 100 --samples 1000 --seed 1") ==
        2);  // needs two n values
}

TEST_CASE("verify-expansion emits per-row status and a summary") {
  CHECK(run("verify-expansion --beta 2 --n 100 --n 1000 --z 0.3 --z 5.0 "
            "--out /tmp/cli_ver.csv") == 0);
  const auto rows = csv_rows(slurp("/tmp/cli_ver.csv"));
  REQUIRE(rows.size() >= 5);
  bool saw_out_of_window = false, saw_ok = false, saw_summary = false;
  for (const auto& r : rows) {
    if (r.size() >= 8 && r[7] == "outside_window") saw_out_of_window = true;
    if (r.size() >= 8 && r[7] == "ok") saw_ok = true;
    if (r.size() >= 2 && r[1] == "summary") saw_summary = true;
  }
  CHECK(saw_ok);
  CHECK(saw_out_of_window);  // z = 5 is outside every window here
  CHECK(saw_summary);
}

TEST_CASE("mc-llt and mc-clt wire the window and tail plumbing") {
  CHECK(run("mc-llt --ensemble laguerre --beta 2 --n 1000 --samples 50000 --seed 11 "
            "--rel-tol 0.5 --out /tmp/cli_llt.csv") == 0);
  const auto rows = csv_rows(slurp("/tmp/cli_llt.csv"));
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][4]) > 0.0);  // some mass lands in the window
  // Wide gates make the small-n clt run pass; the defaults would not.
  CHECK(run("mc-clt --ensemble laguerre --beta 2 --n 1000 --samples 50000 --seed 11 "
            "--ratio-lo 0.5 --ratio-hi 3.0") == 0);
}

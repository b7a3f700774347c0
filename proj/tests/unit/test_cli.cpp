// Copyright 2026 The nlbs Authors
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

#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

const std::string kData = NLBS_DATA_DIR;

int run(const std::string& args) {
  const std::string cmd = std::string(NLBS_CLI) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("") == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("distribution --unitary " + kData + "/identity3.json --input 1,0,0 --bogus 1") == 2);
  CHECK(run("distribution --input 1,0,0 --out x.csv") == 2);
  CHECK(run("gadget optimize --k 9 --out g.json") == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("domain failures exit with 1") {
  CHECK(run("distribution --unitary " + kData + "/identity3.json --input 1,0 --out x.csv") == 1);
  CHECK(slurp("cli_stderr.txt").find("error:") != std::string::npos);
  CHECK(run("gadget verify --gadget " + kData + "/published_k2.json --tol 1e-9") == 1);
}

TEST_CASE("distribution of the identity is a point mass") {
  REQUIRE(run("distribution --unitary " + kData + "/identity3.json --input 1,0,0 --out id.csv") ==
          0);
  CHECK(slurp("id.csv") == "state,probability\n\"1,0,0\",1\n\"0,1,0\",0\n\"0,0,1\",0\n");
  const auto meta = nlohmann::json::parse(slurp("id.csv.meta.json"));
  CHECK(meta["command"] == "distribution");
  CHECK(meta["config"]["input"] == "1,0,0");
  CHECK(meta["config"]["workers"] == "1");
  CHECK(meta.contains("version"));
  CHECK(meta["unitary_file"]["rows"] == 3);
}

TEST_CASE("published gadget verifies") {
  REQUIRE(run("gadget verify --gadget " + kData +
              "/published_k2.json --phi 1.5708 --tol 5e-3 --out verify.json") == 0);
  const auto report = nlohmann::json::parse(slurp("verify.json"));
  CHECK(report["success_prob"].get<double>() == doctest::Approx(0.209).epsilon(0.01));
  CHECK(report["pass"] == true);
}

TEST_CASE("gadget optimize writes a loadable gadget") {
  REQUIRE(run("gadget optimize --k 2 --phi 1.5707963267948966 --starts 4 --seed 2 --out g.json") ==
          0);
  const auto g = nlohmann::json::parse(slurp("g.json"));
  CHECK(g["k"] == 2);
  CHECK(g["success_prob"].get<double>() >= 0.15);
  CHECK(g["residual"].get<double>() <= 1e-8);
  CHECK(nlohmann::json::parse(slurp("g.json.meta.json"))["config"]["seed"] == "2");
  CHECK(run("gadget verify --gadget g.json --tol 1e-4") == 0);
}

TEST_CASE("non-linear distribution methods") {
  REQUIRE(run("nonlinear-distribution --config " + kData + "/hom.json --out nl.csv") == 0);
  REQUIRE(run("nonlinear-distribution --config " + kData +
              "/hom.json --method linear-phase --out lp.csv") == 0);
  REQUIRE(run("nonlinear-distribution --config " + kData + "/hom.json --method gadget --out g.csv") ==
          0);
  CHECK(slurp("lp.csv").find("\"1,1\",0.5") != std::string::npos);
  CHECK(run("nonlinear-distribution --config " + kData + "/hom.json --method other --out x.csv") ==
        2);
}

TEST_CASE("simulate writes samples and a summary") {
  REQUIRE(run("simulate --config " + kData + "/example_n3_m5.json --samples 300 --seed 4 --out s.csv") ==
          0);
  const std::string csv = slurp("s.csv");
  CHECK(csv.rfind("index,state,accepted_trial_count\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 301);
  const auto summary = nlohmann::json::parse(slurp("s.summary.json"));
  CHECK(summary["n_samples"] == 300);
  CHECK(summary.contains("p_postselect"));
  CHECK(summary.contains("tvd_vs_exact"));
}

TEST_CASE("experiment and analysis commands") {
  REQUIRE(run("experiment tvd-bunching --n 2 --modes 3,4 --k 1,2 --trials 3 --seed 1 "
              "--gadget-starts 4 --out e.csv") == 0);
  const std::string csv = slurp("e.csv");
  CHECK(csv.rfind("n,m,k,phi,trial,seed,tvd,p_bunch_site,p_bunch_global,p_postselect\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
  const auto summary = nlohmann::json::parse(slurp("e.summary.json"));
  CHECK(summary["groups"].size() == 4);

  REQUIRE(run("analyze cumulative --n 2 --m 4 --units 10 --out c.csv") == 0);
  CHECK(slurp("c.csv").rfind("threshold,fraction_mean,fraction_std\n", 0) == 0);
  REQUIRE(run("analyze truncation --n 2 --m 3,4 --n-max 1 --units 10 --out t.csv") == 0);
  const std::string tcsv = slurp("t.csv");
  CHECK(std::count(tcsv.begin(), tcsv.end(), '\n') == 3);
  REQUIRE(run("analyze linear-search --config " + kData + "/hom.json --iterations 20 --out l.csv") ==
          0);
  const std::string lcsv = slurp("l.csv");
  CHECK(std::count(lcsv.begin(), lcsv.end(), '\n') == 21);
}

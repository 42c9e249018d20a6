// Copyright 2026 The dpkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end coverage of the CLI surface. Requires DPKIT_BIN to point at the
// built binary (ctest sets it).

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

std::string binary() {
  const char* bin = std::getenv("DPKIT_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "DPKIT_BIN must point at the dpkit binary");
  return bin;
}

int runCmd(const std::string& args) {
  const int rc = std::system((binary() + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dpkit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("gen is deterministic per seed and feeds estimate/run") {
  TempDir tmp;
  const std::string a = tmp.file("a.csv");
  const std::string b = tmp.file("b.csv");
  CHECK(runCmd("gen --n 50 --mu 1.5 --sigma 1 --seed 11 --output " + a) == 0);
  CHECK(runCmd("gen --n 50 --mu 1.5 --sigma 1 --seed 11 --output " + b) == 0);
  CHECK(slurp(a) == slurp(b));

  const std::string est = tmp.file("est.json");
  CHECK(runCmd("estimate --estimator median --radius 10 --input " + a +
               " --output " + est) == 0);
  const std::string estJson = slurp(est);
  CHECK(estJson.find("\"value\"") != std::string::npos);

  const std::string out = tmp.file("run.json");
  CHECK(runCmd("run --estimator median --radius 10 --epsilon 1 --rho 0.3 "
               "--seed 3 --input " +
               a + " --output " + out) == 0);
  const std::string runJson = slurp(out);
  for (const char* key :
       {"\"value\"", "\"bot\"", "\"score\"", "\"support_cells\"", "\"seed\""})
    CHECK(runJson.find(key) != std::string::npos);
  CHECK(runJson.find("\"bot\": false") != std::string::npos);

  // Same seed, same draw.
  const std::string out2 = tmp.file("run2.json");
  CHECK(runCmd("run --estimator median --radius 10 --epsilon 1 --rho 0.3 "
               "--seed 3 --input " +
               a + " --output " + out2) == 0);
  CHECK(slurp(out) == slurp(out2));
}

TEST_CASE("oracle emits the score field csv") {
  TempDir tmp;
  const std::string data = tmp.file("d.csv");
  REQUIRE(runCmd("gen --n 20 --mu 0 --sigma 1 --seed 2 --output " + data) == 0);
  const std::string field = tmp.file("f.csv");
  CHECK(runCmd("oracle --estimator median --radius 3 --grid-res 0.5 --rho 0.5 "
               "--input " +
               data + " --output " + field) == 0);
  const std::string text = slurp(field);
  CHECK(text.rfind("t_1,score\n", 0) == 0);
  CHECK(text.find("inf") == std::string::npos);  // median reaches every cell

  // The sparse gate writes inf rows for dense cells.
  const std::string data2 = tmp.file("d2.csv");
  REQUIRE(runCmd("gen --n 20 --dim 2 --mu 0,0 --sigma 1 --seed 2 --output " +
                 data2) == 0);
  const std::string field2 = tmp.file("f2.csv");
  CHECK(runCmd("oracle --estimator topk-mean --k 1 --dim 2 --radius 1 "
               "--grid-res 0.25 --rho 0.25 --variant sparse --input " +
               data2 + " --output " + field2) == 0);
  const std::string text2 = slurp(field2);
  CHECK(text2.rfind("t_1,t_2,score\n", 0) == 0);
  CHECK(text2.find("inf") != std::string::npos);
}

TEST_CASE("config file supplies flags and flags override the file") {
  TempDir tmp;
  const std::string data = tmp.file("d.csv");
  REQUIRE(runCmd("gen --n 40 --mu 0.5 --sigma 1 --seed 7 --output " + data) == 0);

  const std::string conf = tmp.file("run.conf");
  {
    std::ofstream c(conf);
    c << "estimator = median\n"
      << "radius = 10\n"
      << "epsilon = 1\n"
      << "rho = 0.3\n"
      << "seed = 5\n"
      << "input = " << data << "\n";
  }
  const std::string out1 = tmp.file("o1.json");
  CHECK(runCmd("run --config " + conf + " --output " + out1) == 0);
  const std::string viaFlags = tmp.file("o2.json");
  CHECK(runCmd("run --estimator median --radius 10 --epsilon 1 --rho 0.3 "
               "--seed 5 --input " +
               data + " --output " + viaFlags) == 0);
  CHECK(slurp(out1) == slurp(viaFlags));

  // A flag on the command line beats the file.
  const std::string out3 = tmp.file("o3.json");
  CHECK(runCmd("run --config " + conf + " --seed 6 --output " + out3) == 0);
  CHECK(slurp(out3) != slurp(out1));
}

TEST_CASE("DPKIT_SEED supplies the master seed when --seed is absent") {
  TempDir tmp;
  const std::string a = tmp.file("a.csv");
  const std::string b = tmp.file("b.csv");
  const std::string envRun = "DPKIT_SEED=123 " + binary();
  CHECK(WEXITSTATUS(std::system(
            (envRun + " gen --n 30 --output " + a + " >/dev/null 2>&1").c_str())) == 0);
  CHECK(runCmd("gen --n 30 --seed 123 --output " + b) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("exit codes: usage errors 2, criterion failures 1, success 0") {
  TempDir tmp;
  CHECK(runCmd("no-such-subcommand") == 2);
  CHECK(runCmd("run --epsilon 1") == 2);  // missing --input
  CHECK(runCmd("gen --n 10 --sigma -3 --output " + tmp.file("x.csv")) == 2);

  // A mean audited with a median-grade error claim fails its audit.
  CHECK(runCmd("audit-robust --estimator trimmed-mean --fraction 0 "
               "--radius 1e9 --tau 0.2 --alpha 1.0 --beta 0.05 "
               "--n 51 --trials 100 --seed 3 --output " +
               tmp.file("r1.json")) == 1);
  // The projected median passes the same claim.
  CHECK(runCmd("audit-robust --estimator median --radius 10 --tau 0.2 "
               "--alpha 1.0 --beta 0.05 --n 51 --trials 100 --seed 3 "
               "--output " +
               tmp.file("r2.json")) == 0);
}

TEST_CASE("run --ptr releases on well-behaved data") {
  TempDir tmp;
  const std::string data = tmp.file("d.csv");
  REQUIRE(runCmd("gen --n 300 --mu 1 --sigma 1 --seed 5 --output " + data) == 0);
  const std::string out = tmp.file("ptr.json");
  CHECK(runCmd("run --estimator median --radius 10 --epsilon 1 --delta 0.01 "
               "--beta 0.01 --tau 0.2 --alpha 0.7 --ptr --seed 8 --input " +
               data + " --output " + out) == 0);
  const std::string json = slurp(out);
  CHECK(json.find("\"bot\": false") != std::string::npos);
  CHECK(json.find("\"noisy_distance\"") != std::string::npos);
}

TEST_CASE("audit-dp randomized response via the CLI") {
  TempDir tmp;
  const std::string out = tmp.file("dp.json");
  CHECK(runCmd("audit-dp --scenario randomized-response --epsilon 1 "
               "--samples 20000 --seed 4 --output " +
               out) == 0);
  const std::string json = slurp(out);
  CHECK(json.find("\"epsilon_hat\"") != std::string::npos);
  CHECK(json.find("\"all_pass\": true") != std::string::npos);
}

TEST_SUITE_END();

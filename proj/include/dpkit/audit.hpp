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

#ifndef DPKIT_AUDIT_HPP
#define DPKIT_AUDIT_HPP

#include <functional>
#include <string>
#include <utility>

#include "dpkit/contamination.hpp"
#include "dpkit/losses.hpp"
#include "dpkit/transforms.hpp"

namespace dpkit {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// Structured result of an audit or benchmark. Reports are reproducible
// bit-exactly from (config, master seed); wall-clock time is kept out of the
// serialized form so that holds for the JSON too.
struct ExperimentReport {
  std::string scenario;
  std::uint64_t masterSeed = 0;
  double wallClockSec = 0.0;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<CheckResult> checks;

  void put(const std::string& key, double value);
  double metric(const std::string& key) const;
  void check(const std::string& name, double value, double threshold, bool pass);
  bool allPass() const;
  std::string toJson() const;
};

// A mechanism with finite output support, prepared once per dataset so
// repeated draws are cheap. Outcome indices lie in [0, outcomes); the PTR
// bottom output, when present, is the last index.
struct DiscreteMechanism {
  std::size_t outcomes = 0;
  std::function<std::function<std::size_t(std::uint64_t)>(const Dataset&)> prepare;
};

using NeighborGenerator =
    std::function<std::pair<Dataset, Dataset>(std::uint64_t)>;

// Samples both sides of each neighbor pair, builds per-event empirical
// probabilities with Wilson confidence bounds, and reports
//   epsilonHat = max over events and directions of the CI-adjusted log ratio.
// A violation is flagged when epsilonHat exceeds epsilon. The secondary
// slack check compares raw per-event ratios against e^eps * (1 + slack) with
// slack from the 99.9% binomial CI.
ExperimentReport auditDp(const DiscreteMechanism& mech,
                         const NeighborGenerator& gen, double epsilon,
                         std::size_t samples, std::size_t pairs,
                         std::uint64_t seed);

using DataGenerator = std::function<Dataset(std::uint64_t)>;
using SeededEstimator = std::function<Vec(const Dataset&, std::uint64_t)>;

// Per trial: draw a clean dataset, run every adversary at budget
// floor(n*tau), and record the worst error against trueMu. Reports the
// failure frequency against profile.beta and the (1-beta) quantile of the
// worst error (the audited alpha). A fixed adversary suite lower-bounds the
// supremum over corruptions.
ExperimentReport auditRobustness(const SeededEstimator& alg,
                                 const DataGenerator& gen, const Vec& trueMu,
                                 const Loss& loss,
                                 const RobustnessProfile& profile,
                                 const std::vector<Adversary>& adversaries,
                                 std::size_t trials, std::uint64_t seed);

// One accuracy-benchmark observation.
struct BenchRow {
  std::size_t n = 0;
  double epsilon = 0.0;
  std::size_t trial = 0;
  double error = 0.0;
  std::uint64_t seed = 0;
};

struct BenchResult {
  ExperimentReport report;
  std::vector<BenchRow> rows;
};

// Scenario for the accuracy benchmark and the equivalence experiment:
// 1-d Gaussian location estimation through the projected median and the
// smooth inverse-sensitivity mechanism.
struct BenchScenario {
  double mu = 0.5;
  double sigma = 1.0;
  double radius = 10.0;
  double beta = 0.05;       // quantile level is 1 - beta
  std::size_t cleanSims = 200;  // Monte-Carlo size for the baseline alpha0
};

// Runs trials over the (n, epsilon) grid, recording the mechanism error per
// trial. The report carries per-cell (1-beta)-quantile errors, the two-term
// fit of quantile error against sqrt(d/n) and d log(Rn/d)/(n eps), and the
// single-constant fit used by the shape checks.
BenchResult benchAccuracy(const BenchScenario& scenario,
                          const std::vector<std::size_t>& ns,
                          const std::vector<double>& epsilons,
                          std::size_t trials, std::uint64_t seed);

void writeBenchCsv(const std::vector<BenchRow>& rows, const std::string& path);

// Compares the audited worst-adversary error of the median at
// tau = log(n)/(n eps) with the transformed mechanism's quantile error at
// the same failure level, and reports alphaPriv / alphaRob. Requires
// epsilon >= 4 log(n)/n (the experiment's analysis needs eps = omega(log n / n)).
ExperimentReport equivalenceExperiment(std::size_t n, double epsilon,
                                       std::size_t trials, std::uint64_t seed);

// Binary randomized response over single-record {0,1} datasets, the
// closed-form scenario for auditor calibration tests.
DiscreteMechanism randomizedResponseMechanism(double epsilon);
std::pair<Dataset, Dataset> randomizedResponsePair();

// Exponential-mechanism-under-audit scenario: 1-d projected-median smooth
// mechanism over on-grid data; outcome = grid cell index.
DiscreteMechanism medianMechanismForAudit(const MechanismConfig& config);

}  // namespace dpkit

#endif  // DPKIT_AUDIT_HPP

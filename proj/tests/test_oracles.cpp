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

#include "dpkit/oracles.hpp"

#include <cmath>

#include "doctest.h"
#include "dpkit/rng.hpp"

using namespace dpkit;

namespace {

Estimator median1d() {
  return [](const Dataset& d) { return Vec{lowerMedian(d.column(0))}; };
}

std::vector<Vec> valueGrid(std::initializer_list<double> vals) {
  std::vector<Vec> g;
  for (double v : vals) g.push_back({v});
  return g;
}

}  // namespace

TEST_SUITE_BEGIN("oracles");

TEST_CASE("brute force path length on the median") {
  const auto s = Dataset::fromValues({1, 2, 3, 4, 5});
  const auto oracle =
      LenOracle::bruteForce(median1d(), valueGrid({9, 100, 101, 102}), 5);
  CHECK(oracle.len(s, Vec{3.0}, 1.0) == 0);   // t = f(S)
  CHECK(oracle.len(s, Vec{4.0}, 1.0) == 1);   // one change: [2,3,4,5,9]
  CHECK(oracle.len(s, Vec{100.0}, 1.0) == 3); // three originals <= 5 remain otherwise
}

TEST_CASE("empty replacement grid is rejected") {
  CHECK_THROWS_AS((void)LenOracle::bruteForce(median1d(), {}, 3), ParameterError);
}

TEST_CASE("analytic median path length") {
  const auto s = Dataset::fromValues({1, 2, 3, 4, 5});
  const auto oracle = LenOracle::medianAnalytic();
  CHECK(oracle.len(s, Vec{3.0}) == 0);
  CHECK(oracle.len(s, Vec{3.5}) == 1);
  CHECK(oracle.len(s, Vec{100.0}) == 3);
  CHECK(oracle.len(s, Vec{-100.0}) == 3);
  CHECK(oracle.len(s, Vec{1.0}) == 2);
  const auto even = Dataset::fromValues({1, 2, 3, 4});
  CHECK(oracle.len(even, Vec{2.0}) == 0);  // lower median
}

// Exhaustive equality of the analytic and brute-force oracles over small
// datasets drawn from a 9-value grid, every grid target.
TEST_CASE("analytic equals brute force on grid instances") {
  SplitMix64 rng(2024);
  const std::vector<double> values = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<Vec> replacements;
  for (double v : values) replacements.push_back({v});
  const auto analytic = LenOracle::medianAnalytic();

  int instances = 0;
  for (std::size_t n : {3, 5, 7}) {
    for (int rep = 0; rep < 67 && instances < 200; ++rep, ++instances) {
      std::vector<double> data(n);
      for (double& x : data) x = values[rng.nextU64() % values.size()];
      const Dataset s = Dataset::fromValues(data);
      const auto cap = static_cast<std::int32_t>(n);
      const auto brute = LenOracle::bruteForce(median1d(), replacements, cap);
      for (double t : values) {
        const auto a = std::min(analytic.len(s, Vec{t}), cap);
        const auto b = brute.len(s, Vec{t}, 1.0);
        REQUIRE(a == b);
      }
    }
  }
  CHECK(instances == 200);
}

TEST_CASE("quantile oracle generalizes the median") {
  // Pivot at ceil(q n): q = 0.25 over n = 8 targets the 2nd order statistic.
  const auto s = Dataset::fromValues({5, 1, 7, 3, 8, 2, 9, 4});
  const auto oracle = LenOracle::quantileAnalytic(0.25);
  CHECK(oracle.len(s, Vec{2.0}) == 0);
  const Estimator secondStat = [](const Dataset& d) {
    auto col = d.column(0);
    std::sort(col.begin(), col.end());
    return Vec{col[1]};
  };
  const auto brute =
      LenOracle::bruteForce(secondStat, valueGrid({1, 2, 3, 4, 5, 6, 7, 8, 9}), 8);
  SplitMix64 rng(64);
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<double> data(5);
    for (double& x : data) x = 1.0 + double(rng.nextU64() % 9);
    const Dataset inst = Dataset::fromValues(data);
    for (double t = 1; t <= 9; ++t) {
      CHECK(std::min(oracle.len(inst, Vec{t}), 5) == brute.len(inst, Vec{t}, 1.0));
    }
  }
}

TEST_CASE("smooth path length") {
  const auto s = Dataset::fromValues({1, 2, 3, 4, 5});
  const auto oracle = LenOracle::medianAnalytic();
  // rho = 0 degenerates to the plain oracle.
  for (double t : {0.5, 2.0, 3.7, 9.0})
    CHECK(oracle.smoothLen(s, Vec{t}, 0.0) == oracle.len(s, Vec{t}));
  // Distance from 4.5 to the one-replacement interval [2, 4] is 0.5.
  CHECK(oracle.smoothLen(s, Vec{4.5}, 0.5) == 1);
  CHECK(oracle.smoothLen(s, Vec{4.5}, 0.49) == 2);
  // The sparsity gate fires on the l0 norm alone.
  CHECK(oracle.smoothLen(s, Vec{4.5}, 0.5, 1) == 1);
  const auto sparse = LenOracle::sparseMeanAnalytic(1, 10.0);
  const Dataset s3 = Dataset::fromRows({{0.0, 0.0, 0.0}});
  CHECK(sparse.smoothLen(s3, Vec{1.0, 1.0, 0.0}, 0.1, 1) == kScoreInf);
}

TEST_CASE("smooth is monotone in rho and below plain") {
  SplitMix64 rng(55);
  const auto oracle = LenOracle::medianAnalytic(10.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> data(7);
    for (double& x : data) x = rng.nextGaussian() * 3.0;
    const Dataset s = Dataset::fromValues(data);
    const double t = rng.nextGaussian() * 6.0;
    const auto plain = oracle.len(s, Vec{t});
    std::int32_t prev = plain;
    for (double rho : {0.1, 0.5, 1.0, 2.0}) {
      const auto sm = oracle.smoothLen(s, Vec{t}, rho);
      CHECK(sm <= prev);
      prev = sm;
    }
  }
}

TEST_CASE("sparse mean analytic oracle") {
  const Dataset s = Dataset::fromRows({{1.0, 0.0, 2.0}, {3.0, 0.0, 2.0}});
  const auto oracle = LenOracle::sparseMeanAnalytic(2, 10.0);
  // f(S) = top-2 of the means (2, 0, 2).
  RobustEstimatorSpec spec;
  spec.kind = EstimatorKind::TopKSparseMean;
  spec.sparsity = 2;
  spec.radius = 10.0;
  spec.dim = 3;
  const Vec y = estimate(spec, s);
  CHECK(oracle.len(s, y) == 0);
  CHECK(oracle.len(s, Vec{5.0, 0.0, 1.0}) == 1);   // 2-sparse, in range
  CHECK(oracle.len(s, Vec{5.0, 1.0, 1.0}) == kScoreInf);  // 3 nonzeros
  CHECK(oracle.len(s, Vec{9.0, 0.0, 9.0}) == kScoreInf);  // norm > R
  CHECK(oracle.smoothLen(s, y, 0.5) == 0);
  // Within rho of a reachable sparse point, but not of f(S).
  CHECK(oracle.smoothLen(s, Vec{5.0, 0.3, 1.0}, 0.5) == 1);
  CHECK(oracle.smoothLen(s, Vec{5.0, 0.6, 1.0}, 0.5) == kScoreInf);
}

TEST_CASE("modulus of continuity") {
  const auto s = Dataset::fromValues({1, 2, 3, 4, 5});
  CHECK(modulusProjectedMedian(s, 0, 10.0) == 0.0);
  // Reachable medians with one replacement: [2, 4], baseline 3.
  CHECK(modulusProjectedMedian(s, 1, 10.0) == doctest::Approx(1.0));
  // With three replacements the median escapes, clipped at +-10.
  CHECK(modulusProjectedMedian(s, 3, 10.0) == doctest::Approx(13.0));
  CHECK_THROWS_AS((void)modulusProjectedMedian(s, 6, 10.0), ParameterError);

  // Brute force agrees when the grid carries the analytic extremes.
  const auto grid = valueGrid({1, 2, 3, 4, 5, -100, 100});
  RobustEstimatorSpec proj;
  proj.kind = EstimatorKind::ProjectedMedian;
  proj.radius = 10.0;
  const Estimator f = estimatorFn(proj);
  CHECK(modulusBruteForce(f, s, 1, grid) == doctest::Approx(1.0));
  CHECK(modulusBruteForce(f, s, 3, grid) == doctest::Approx(13.0));
}

TEST_CASE("distance to the bad set: trivial cases") {
  const auto s = Dataset::fromValues({1, 2, 3, 4, 5});
  // B at least the output diameter: the bad set is empty.
  CHECK(!distToBadProjectedMedian(s, 1, 20.0, 10.0).has_value());
  CHECK(distToBadSerialized(distToBadProjectedMedian(s, 1, 20.0, 10.0), 5) == 6);
  // Already unsafe: modulus(S; K+1) exceeds B.
  const double mod2 = modulusProjectedMedian(s, 2, 10.0);
  CHECK(distToBadProjectedMedian(s, 1, mod2 - 0.5, 10.0) == 0);
}

// The analytic bad-set distance must agree with the nested exhaustive search
// (over both the corruption and the modulus adversary) on random instances.
TEST_CASE("distance to the bad set: analytic equals double brute force") {
  SplitMix64 rng(808);
  RobustEstimatorSpec proj;
  proj.kind = EstimatorKind::ProjectedMedian;
  proj.radius = 3.0;
  const Estimator f = estimatorFn(proj);

  int agreements = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> data(5);
    for (double& x : data) x = std::round(rng.nextGaussian() * 20.0) / 10.0;
    const Dataset s = Dataset::fromValues(data);

    std::vector<Vec> grid;
    for (double v : data) grid.push_back({v});
    grid.push_back({-30.0});
    grid.push_back({30.0});

    const std::size_t K = rng.nextU64() % 2;          // K in {0, 1}
    const double B = 0.5 + 3.0 * rng.nextUniform();   // below the diameter 6

    const auto analytic = distToBadProjectedMedian(s, K, B, proj.radius);
    const auto brute = distToBadBruteForce(f, s, K, B, grid);
    REQUIRE(analytic == brute);
    ++agreements;
  }
  CHECK(agreements == 100);
}

TEST_CASE("modulus and bad-set distance are consistent") {
  SplitMix64 rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> data(9);
    for (double& x : data) x = rng.nextGaussian() * 2.0;
    const Dataset s = Dataset::fromValues(data);
    const std::size_t K = 1 + rng.nextU64() % 3;
    const double B = 1.0 + 2.0 * rng.nextUniform();
    const auto dist = distToBadProjectedMedian(s, K, B, 5.0);
    if (!dist || *dist >= 1) {
      CHECK(modulusProjectedMedian(s, K + 1, 5.0) <= B);
    }
  }
}

TEST_SUITE_END();

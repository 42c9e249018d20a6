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

#include "dpkit/losses.hpp"

#include "doctest.h"
#include "dpkit/rng.hpp"

using namespace dpkit;

namespace {

Vec randomVec(SplitMix64& rng, std::size_t d, double scale = 1.0) {
  Vec v(d);
  for (double& x : v) x = rng.nextGaussian() * scale;
  return v;
}

Eigen::MatrixXd randomPsdPlusIdentity(SplitMix64& rng, int d) {
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = rng.nextGaussian();
  return Eigen::MatrixXd::Identity(d, d) + a.transpose() * a;
}

}  // namespace

TEST_SUITE_BEGIN("losses");

TEST_CASE("closed forms") {
  const Loss e = Loss::euclidean();
  CHECK(e(Vec{3, 4}, Vec{0, 0}) == doctest::Approx(5.0));
  CHECK(e(Vec{1, 2}, Vec{1, 2}) == 0.0);

  const Eigen::MatrixXd sigma = 4.0 * Eigen::MatrixXd::Identity(2, 2);
  const Loss m = Loss::mahalanobis(sigma);
  CHECK(m(Vec{2, 0}, Vec{0, 0}) == doctest::Approx(1.0));
  CHECK(m(Vec{5, -3}, Vec{5, -3}) == 0.0);
}

TEST_CASE("dimension mismatch and bad sigma are rejected") {
  const Loss e = Loss::euclidean();
  CHECK_THROWS_AS((void)e(Vec{1, 2}, Vec{1}), ParameterError);
  const Eigen::MatrixXd bad = (Eigen::MatrixXd(2, 2) << 0.0, 0.0, 0.0, 0.0).finished();
  CHECK_THROWS_AS((void)Loss::mahalanobis(bad), ParameterError);
}

// Sigma >= I implies the Mahalanobis norm is dominated by the euclidean one.
TEST_CASE("mahalanobis dominance for sigma >= identity") {
  SplitMix64 rng(17);
  for (int rep = 0; rep < 1000; ++rep) {
    const int d = 1 + static_cast<int>(rng.nextU64() % 4);
    const Eigen::MatrixXd sigma = randomPsdPlusIdentity(rng, d);
    const Loss m = Loss::mahalanobis(sigma);
    const Loss e = Loss::euclidean();
    const Vec v = randomVec(rng, static_cast<std::size_t>(d), 3.0);
    const Vec zero(static_cast<std::size_t>(d), 0.0);
    CHECK(m(v, zero) <= e(v, zero) + 1e-9);
  }
}

TEST_CASE("triangle inequality on random triples") {
  SplitMix64 rng(23);
  const Eigen::MatrixXd sigma = randomPsdPlusIdentity(rng, 3);
  const Loss losses[] = {Loss::euclidean(), Loss::mahalanobis(sigma)};
  for (const Loss& loss : losses) {
    for (int rep = 0; rep < 1000; ++rep) {
      const Vec a = randomVec(rng, 3), b = randomVec(rng, 3), c = randomVec(rng, 3);
      CHECK(loss(a, c) <= loss(a, b) + loss(b, c) + 1e-9);
    }
  }
}

TEST_SUITE_END();

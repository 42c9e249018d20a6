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

#include "dpkit/dataset.hpp"

#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "dpkit/rng.hpp"
#include "dpkit/synth.hpp"

using namespace dpkit;

TEST_SUITE_BEGIN("dataset");

TEST_CASE("hamming distance basics") {
  const auto a = Dataset::fromValues({1, 2, 3, 4, 5});
  auto b = a;
  CHECK(hammingDistance(a, b) == 0);
  b.at(1, 0) = 9.0;
  b.at(4, 0) = -1.0;
  CHECK(hammingDistance(a, b) == 2);
  CHECK(hammingDistance(b, a) == 2);  // symmetry
  const auto c = Dataset::fromValues({1, 2, 3});
  CHECK_THROWS_AS((void)hammingDistance(a, c), ParameterError);
}

TEST_CASE("csv round trip is bit stable") {
  SplitMix64 rng(99);
  Dataset d(37, 3);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.dim(); ++j)
      d.at(i, j) = rng.nextGaussian() * 1e3 * rng.nextUniform();
  const std::string path = "test_roundtrip.csv";
  writeCsv(d, path);
  const Dataset back = readCsv(path);
  REQUIRE(back.size() == d.size());
  REQUIRE(back.dim() == d.dim());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.dim(); ++j)
      CHECK(back.at(i, j) == d.at(i, j));
  std::filesystem::remove(path);
}

TEST_CASE("header line can be skipped") {
  const std::string path = "test_header.csv";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("x,y\n1.5,2.5\n3.5,4.5\n", f);
    std::fclose(f);
  }
  const Dataset d = readCsv(path, /*skipHeader=*/true);
  CHECK(d.size() == 2);
  CHECK(d.dim() == 2);
  CHECK(d.at(0, 0) == 1.5);
  CHECK(d.at(1, 1) == 4.5);
  std::filesystem::remove(path);
}

TEST_CASE("gaussian generator: empty, deterministic, centered") {
  const Eigen::MatrixXd id1 = Eigen::MatrixXd::Identity(1, 1);
  CHECK(genGaussian(0, {0.0}, id1, 1).empty());

  const Eigen::MatrixXd sigma = (Eigen::MatrixXd(2, 2) << 2.0, 0.3, 0.3, 1.0).finished();
  const Dataset a = genGaussian(50, {1.0, -1.0}, sigma, 7);
  const Dataset b = genGaussian(50, {1.0, -1.0}, sigma, 7);
  CHECK(a == b);
  const Dataset c = genGaussian(50, {1.0, -1.0}, sigma, 8);
  CHECK(a != c);

  // Per-coordinate sample mean within 0.2 of the true mean for (nearly)
  // every seed; 6.3 sigma of slack at n = 1000.
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Dataset d = genGaussianSpherical(1000, {0.0, 0.0}, 1.0, seed);
    double m0 = 0, m1 = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      m0 += d.at(i, 0);
      m1 += d.at(i, 1);
    }
    m0 /= 1000.0;
    m1 /= 1000.0;
    if (std::abs(m0) < 0.2 && std::abs(m1) < 0.2) ++ok;
  }
  CHECK(ok >= 198);
}

TEST_CASE("non positive definite sigma is rejected") {
  const Eigen::MatrixXd bad = (Eigen::MatrixXd(2, 2) << 1.0, 2.0, 2.0, 1.0).finished();
  CHECK_THROWS_AS((void)genGaussian(10, {0.0, 0.0}, bad, 1), ParameterError);
}

TEST_SUITE_END();

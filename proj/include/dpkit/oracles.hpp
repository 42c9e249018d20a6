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

#ifndef DPKIT_ORACLES_HPP
#define DPKIT_ORACLES_HPP

#include <limits>
#include <optional>

#include "dpkit/dataset.hpp"
#include "dpkit/estimators.hpp"
#include "dpkit/lattice.hpp"

namespace dpkit {

// Scores are nonnegative replacement counts; kScoreInf marks unreachable
// outputs (zero mechanism weight).
inline constexpr std::int32_t kScoreInf = std::numeric_limits<std::int32_t>::max();

/*
 * Path-length oracles: len(S; t) is the minimum number of records of S that
 * must be replaced for the estimator to output t. Its rho-smoothed variant
 * takes the minimum of len over outputs within distance rho of t.
 *
 * Kinds:
 *  - bruteForce: exhaustive search over record subsets and a finite grid of
 *    replacement values; targets are compared after quantization. Exponential
 *    in the cap (n <= 8 recommended). Restricting replacements to a grid
 *    upper-bounds the unrestricted path length; the restricted score keeps
 *    sensitivity 1 whenever the grid contains the data values.
 *  - medianAnalytic / quantileAnalytic: exact closed form for the (projected)
 *    1-d order statistic via the reachable-interval characterization: with
 *    sorted values x(1..n) and pivot index m, k replacements reach exactly
 *    the medians in [x(m-k), x(m+k)].
 *  - sparseMeanAnalytic: exact closed form for the projected top-k sparse
 *    mean, whose mean core makes every in-range k-sparse target reachable
 *    with one replacement.
 */
class LenOracle {
 public:
  enum class Kind { BruteForce, MedianAnalytic, QuantileAnalytic, SparseMeanAnalytic };

  static LenOracle bruteForce(Estimator f, std::vector<Vec> replacementGrid,
                              std::int32_t cap);
  static LenOracle medianAnalytic(
      double projectionRadius = std::numeric_limits<double>::infinity());
  static LenOracle quantileAnalytic(
      double q,
      double projectionRadius = std::numeric_limits<double>::infinity());
  static LenOracle sparseMeanAnalytic(int k, double radius);

  Kind kind() const { return kind_; }
  std::int32_t cap() const { return cap_; }
  int sparseK() const { return sparseK_; }

  // Plain path length. quantStep sets the brute-force target quantization
  // (analytic kinds hit targets exactly and ignore it).
  std::int32_t len(const Dataset& data, std::span<const double> t,
                   double quantStep = 0.0) const;

  // rho-smoothed path length; with `sparsity` set, returns kScoreInf whenever
  // ||t||_0 exceeds it. rho = 0 reduces to len().
  std::int32_t smoothLen(const Dataset& data, std::span<const double> t,
                         double rho, std::optional<int> sparsity = std::nullopt,
                         double quantStep = 0.0) const;

  // Smoothed scores for every cell of the grid. Analytic kinds evaluate each
  // cell independently (the OpenMP axis); the brute-force kind fills the
  // whole table in one forward enumeration and then smooths it. Parallel and
  // serial execution return identical tables.
  std::vector<std::int32_t> scoreTable(const Dataset& data,
                                       const LatticeGrid& grid, double rho,
                                       Exec exec = Exec::Parallel) const;

 private:
  LenOracle() = default;

  Kind kind_ = Kind::MedianAnalytic;
  Estimator f_;
  std::vector<Vec> replacements_;
  std::int32_t cap_ = 1;
  double quantileQ_ = 0.5;
  double projectionRadius_ = std::numeric_limits<double>::infinity();
  int sparseK_ = 1;
};

enum class OracleMethod { BruteForce, MedianAnalytic };

// Local modulus of continuity: the largest output displacement achievable by
// replacing at most K records. Exact over the replacement grid for the brute
// force method; exact (unrestricted adversary) for the projected median.
double modulusBruteForce(const Estimator& f, const Dataset& data, std::size_t K,
                         const std::vector<Vec>& replacementGrid);
double modulusProjectedMedian(const Dataset& data, std::size_t K, double radius);

// Least Hamming distance from `data` to a dataset whose modulus at K+1
// exceeds B; nullopt when no dataset does (the bad set is empty).
std::optional<std::size_t> distToBadBruteForce(const Estimator& f,
                                               const Dataset& data,
                                               std::size_t K, double B,
                                               const std::vector<Vec>& replacementGrid);
std::optional<std::size_t> distToBadProjectedMedian(const Dataset& data,
                                                    std::size_t K, double B,
                                                    double radius);

// Serialized form of the infinite distance sentinel is n+1 (keeps CSV/JSON
// numeric).
inline std::size_t distToBadSerialized(std::optional<std::size_t> dist,
                                       std::size_t n) {
  return dist ? *dist : n + 1;
}

}  // namespace dpkit

#endif  // DPKIT_ORACLES_HPP

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

#ifndef DPKIT_MECHANISMS_HPP
#define DPKIT_MECHANISMS_HPP

#include "dpkit/params.hpp"
#include "dpkit/score_field.hpp"

namespace dpkit {

// Calibrated parameters consumed by the mechanisms.
struct MechanismConfig {
  PrivacyBudget budget;
  double rho = 0.0;                       // smoothing radius
  std::optional<std::int32_t> truncationK;  // truncated mechanism only
  double gridStep = 0.0;                  // cell width w
  OutputRange range;
  double modulusBound = 0.0;              // B, PTR only
  double beta = 0.05;                     // target failure probability

  // The grid must resolve the smoothing radius: w <= rho when rho > 0.
  void validate() const;
};

// A draw from a mechanism. A missing value is the distinguished failure
// output of the PTR pipeline, never an in-band point.
struct MechanismOutput {
  std::optional<Vec> value;
  std::int32_t score = 0;
  double logNormalizer = 0.0;
  std::size_t supportCells = 0;
  std::optional<double> noisyDistance;  // PTR diagnostic
  std::uint64_t seed = 0;

  bool isBottom() const { return !value.has_value(); }
};

/*
 * Exponential mechanism over a finite score field: cell t is drawn with
 * probability proportional to exp(-score(t) * eps / 2). Weights are handled
 * in the log domain (scores reach the hundreds, where exp(-K eps/2)
 * underflows), and sampling inverts the CDF over cells in their fixed
 * lexicographic order, so a draw is a deterministic function of the seed.
 * Holds a reference to the field, which must outlive the sampler.
 */
class FieldSampler {
 public:
  FieldSampler(const ScoreField& field, double epsilon);

  MechanismOutput sample(std::uint64_t seed) const;
  double logNormalizer() const { return logZ_; }
  std::size_t supportSize() const { return support_.size(); }

  // log Pr[cell], or -inf for zero-weight cells; used by the analytic DP
  // checks and chi-square tests.
  double cellLogProb(std::size_t cellIdx) const;

 private:
  const ScoreField* field_;
  double epsilon_;
  double logZ_ = 0.0;
  std::vector<std::size_t> support_;  // indices of finite-score cells
  std::vector<double> cdf_;           // cumulative probabilities over support_
};

// One-shot draw (builds a sampler internally).
MechanismOutput expMechFinite(const ScoreField& field, double epsilon,
                              std::uint64_t seed);

enum class ScoreVariant { Smooth, Truncated, Sparse };

// The grid the mechanism samples from: a dense lattice covering
// ball(R + rho), or the k-sparse neighborhood lattice for sparse-mean
// oracles (a dense grid is not enumerable in high dimension).
LatticeGrid mechanismLattice(const MechanismConfig& config, const LenOracle& oracle);

// Builds the (smoothed, optionally truncated or sparsity-gated) score field
// the mechanism samples from.
ScoreField buildMechanismField(const Dataset& data, const MechanismConfig& config,
                               const LenOracle& oracle, ScoreVariant variant,
                               Exec exec = Exec::Parallel);

// Smooth inverse-sensitivity mechanism realized on a grid: builds the score
// field over ball(R + rho) and applies the finite exponential mechanism.
MechanismOutput smoothInvMech(const Dataset& data, const MechanismConfig& config,
                              const LenOracle& oracle, std::uint64_t seed,
                              Exec exec = Exec::Parallel);

// As smoothInvMech with scores above K mapped to infinity; the returned
// score never exceeds K.
MechanismOutput truncatedInvMech(const Dataset& data, const MechanismConfig& config,
                                 const LenOracle& oracle, std::uint64_t seed,
                                 Exec exec = Exec::Parallel);

// Propose-test-release around the truncated mechanism: privately tests that
// the dataset is far from the set where the modulus at K+1 exceeds B, then
// either releases a truncated-mechanism draw at budget eps/2 or returns the
// bottom output.
MechanismOutput ptrPipeline(const Dataset& data, const RobustEstimatorSpec& rob,
                            const MechanismConfig& config, std::uint64_t seed,
                            Exec exec = Exec::Parallel);

// Oracle matching a catalog estimator: analytic for the 1-d projected median
// and the top-k sparse mean, brute force otherwise (small n only).
LenOracle autoOracle(const RobustEstimatorSpec& rob, const Dataset& data);

}  // namespace dpkit

#endif  // DPKIT_MECHANISMS_HPP

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

#include "dpkit/mechanisms.hpp"

#include <algorithm>
#include <cmath>

#include "dpkit/rng.hpp"

namespace dpkit {

namespace {
// Seed streams inside one mechanism invocation.
constexpr std::uint64_t kStreamSample = 1;
constexpr std::uint64_t kStreamPtrNoise = 2;
constexpr std::uint64_t kStreamPtrMech = 3;
}  // namespace

void MechanismConfig::validate() const {
  budget.validate();
  range.validate();
  if (rho < 0.0) throw ConfigError("rho must be nonnegative");
  if (!(gridStep > 0.0)) throw ConfigError("grid step must be positive");
  if (rho > 0.0 && gridStep > rho)
    throw ConfigError("grid step must not exceed the smoothing radius");
  if (truncationK && *truncationK < 1)
    throw ConfigError("truncation threshold must be at least 1");
}

FieldSampler::FieldSampler(const ScoreField& field, double epsilon)
    : field_(&field), epsilon_(epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  support_.reserve(field.scores.size());
  for (std::size_t i = 0; i < field.scores.size(); ++i)
    if (field.scores[i] != kScoreInf) support_.push_back(i);
  if (support_.empty())
    throw EmptySupportError("score field has no finite-score cell");

  // Log-sum-exp normalization over the support.
  std::int32_t minScore = kScoreInf;
  for (std::size_t i : support_)
    minScore = std::min(minScore, field.scores[i]);
  long double sum = 0.0L;
  for (std::size_t i : support_)
    sum += std::exp(
        -0.5L * epsilon_ *
        static_cast<long double>(field.scores[i] - minScore));
  logZ_ = static_cast<double>(std::log(sum)) - 0.5 * epsilon_ * minScore;

  cdf_.resize(support_.size());
  long double acc = 0.0L;
  for (std::size_t j = 0; j < support_.size(); ++j) {
    acc += std::exp(-0.5L * epsilon_ *
                    static_cast<long double>(field.scores[support_[j]] - minScore)) /
           sum;
    cdf_[j] = static_cast<double>(acc);
  }
  cdf_.back() = 1.0;
}

double FieldSampler::cellLogProb(std::size_t cellIdx) const {
  const std::int32_t s = field_->scores[cellIdx];
  if (s == kScoreInf) return -std::numeric_limits<double>::infinity();
  return -0.5 * epsilon_ * s - logZ_;
}

MechanismOutput FieldSampler::sample(std::uint64_t seed) const {
  SplitMix64 rng(deriveSeed(seed, kStreamSample, 0));
  const double u = rng.nextUniform();
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  const std::size_t j =
      it == cdf_.end() ? cdf_.size() - 1
                       : static_cast<std::size_t>(it - cdf_.begin());
  const std::size_t cell = support_[j];

  MechanismOutput out;
  out.value = field_->grid.point(cell);
  out.score = field_->scores[cell];
  out.logNormalizer = logZ_;
  out.supportCells = support_.size();
  out.seed = seed;
  return out;
}

MechanismOutput expMechFinite(const ScoreField& field, double epsilon,
                              std::uint64_t seed) {
  return FieldSampler(field, epsilon).sample(seed);
}

LatticeGrid mechanismLattice(const MechanismConfig& config, const LenOracle& oracle) {
  if (oracle.kind() == LenOracle::Kind::SparseMeanAnalytic) {
    // Dense grids are not enumerable at high dim; restrict the universe to
    // the neighborhood of k-sparse points, where all remaining cells would
    // carry infinite score anyway.
    return sparseNeighborhoodLattice(config.range.dim, config.gridStep,
                                     config.range.radius, oracle.sparseK(),
                                     config.rho);
  }
  return ballLattice(config.range.dim, config.gridStep,
                     config.range.radius + config.rho);
}

ScoreField buildMechanismField(const Dataset& data, const MechanismConfig& config,
                               const LenOracle& oracle, ScoreVariant variant,
                               Exec exec) {
  config.validate();
  if (!(config.rho > 0.0))
    throw ConfigError("mechanism requires a positive smoothing radius");
  const LatticeGrid grid = mechanismLattice(config, oracle);
  ScoreField field = buildScoreField(oracle, data, grid, config.rho, exec);
  switch (variant) {
    case ScoreVariant::Smooth:
      return field;
    case ScoreVariant::Truncated: {
      if (!config.truncationK)
        throw ConfigError("truncated mechanism requires K");
      return withTruncation(std::move(field), *config.truncationK);
    }
    case ScoreVariant::Sparse: {
      if (oracle.kind() != LenOracle::Kind::SparseMeanAnalytic)
        throw ConfigError("sparse variant requires a sparse-capable oracle");
      return withSparsityGate(std::move(field), oracle.sparseK());
    }
  }
  return field;
}

MechanismOutput smoothInvMech(const Dataset& data, const MechanismConfig& config,
                              const LenOracle& oracle, std::uint64_t seed,
                              Exec exec) {
  const ScoreField field =
      buildMechanismField(data, config, oracle, ScoreVariant::Smooth, exec);
  return expMechFinite(field, config.budget.epsilon, seed);
}

MechanismOutput truncatedInvMech(const Dataset& data, const MechanismConfig& config,
                                 const LenOracle& oracle, std::uint64_t seed,
                                 Exec exec) {
  const ScoreField field =
      buildMechanismField(data, config, oracle, ScoreVariant::Truncated, exec);
  try {
    return expMechFinite(field, config.budget.epsilon, seed);
  } catch (const EmptySupportError&) {
    throw ConfigError(
        "truncated mechanism has empty support (estimator output off-grid or K too small)");
  }
}

LenOracle autoOracle(const RobustEstimatorSpec& rob, const Dataset& data) {
  if (rob.kind == EstimatorKind::ProjectedMedian && data.dim() == 1)
    return LenOracle::medianAnalytic(rob.radius);
  if (rob.kind == EstimatorKind::TopKSparseMean)
    return LenOracle::sparseMeanAnalytic(rob.sparsity, rob.radius);
  if (data.size() > 8)
    throw ConfigError(
        "no analytic oracle for this estimator; brute force needs n <= 8");
  // Replacement values: the current records plus far points past the
  // projection boundary on each axis.
  std::vector<Vec> grid;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto r = data.record(i);
    grid.emplace_back(r.begin(), r.end());
  }
  for (std::size_t j = 0; j < data.dim(); ++j) {
    for (double s : {-1.0, 1.0}) {
      Vec v(data.dim(), 0.0);
      v[j] = s * 10.0 * rob.radius;
      grid.push_back(std::move(v));
    }
  }
  const auto cap = static_cast<std::int32_t>(data.size());
  return LenOracle::bruteForce(estimatorFn(rob), std::move(grid), cap);
}

MechanismOutput ptrPipeline(const Dataset& data, const RobustEstimatorSpec& rob,
                            const MechanismConfig& config, std::uint64_t seed,
                            Exec exec) {
  config.validate();
  if (!config.truncationK) throw ConfigError("PTR requires a truncation threshold");
  if (!(config.modulusBound > 0.0)) throw ConfigError("PTR requires a modulus bound B");
  if (!(config.budget.delta > 0.0))
    throw ConfigError("PTR requires an approximate-DP budget (delta > 0)");
  if (std::abs(config.rho - 2.0 * config.modulusBound) >
      1e-9 * std::max(1.0, config.modulusBound))
    throw ConfigError("PTR requires rho = 2B");
  // Calibration gate, checked before any sampling.
  const double n = static_cast<double>(data.size());
  const double tauFloor =
      8.0 *
      (static_cast<double>(config.range.dim) +
       std::log(1.0 / std::min(config.budget.delta, config.beta))) /
      (n * config.budget.epsilon);
  if (rob.profile.tau < tauFloor)
    throw ConfigError("PTR precondition violated: tau below 8(d+log(1/min(delta,beta)))/(n eps)");

  const std::int32_t K = *config.truncationK;
  const double B = config.modulusBound;

  std::optional<std::size_t> dist;
  if (rob.kind == EstimatorKind::ProjectedMedian && data.dim() == 1) {
    dist = distToBadProjectedMedian(data, static_cast<std::size_t>(K), B, rob.radius);
  } else if (data.size() <= 8) {
    std::vector<Vec> grid;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto r = data.record(i);
      grid.emplace_back(r.begin(), r.end());
    }
    for (std::size_t j = 0; j < data.dim(); ++j) {
      for (double s : {-1.0, 1.0}) {
        Vec v(data.dim(), 0.0);
        v[j] = s * 10.0 * rob.radius;
        grid.push_back(std::move(v));
      }
    }
    dist = distToBadBruteForce(estimatorFn(rob), data,
                               static_cast<std::size_t>(K), B, grid);
  } else {
    throw ConfigError("distance-to-bad-set needs the 1-d median oracle or n <= 8");
  }

  const double eps = config.budget.epsilon;
  SplitMix64 noiseRng(deriveSeed(seed, kStreamPtrNoise, 0));
  const double zeta = noiseRng.nextLaplace(2.0 / eps);
  const double dHat =
      dist ? static_cast<double>(*dist) + zeta
           : std::numeric_limits<double>::infinity();
  const double threshold =
      2.0 * std::log(1.0 / std::min(config.budget.delta, config.beta)) / eps;

  if (!(dHat > threshold)) {
    MechanismOutput bottom;
    bottom.noisyDistance = dHat;
    bottom.seed = seed;
    return bottom;
  }

  MechanismConfig inner = config;
  inner.budget.epsilon = eps / 2.0;
  MechanismOutput out = truncatedInvMech(data, inner, autoOracle(rob, data),
                                         deriveSeed(seed, kStreamPtrMech, 0), exec);
  out.noisyDistance = dHat;
  out.seed = seed;
  return out;
}

}  // namespace dpkit

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

#ifndef DPKIT_ESTIMATORS_HPP
#define DPKIT_ESTIMATORS_HPP

#include <cstdint>
#include <functional>

#include "dpkit/dataset.hpp"
#include "dpkit/params.hpp"
#include "dpkit/vec.hpp"

namespace dpkit {

// A deterministic map from datasets to points.
using Estimator = std::function<Vec(const Dataset&)>;

enum class Exec { Serial, Parallel };

enum class EstimatorKind {
  // Coordinate-wise lower median, euclidean projection onto ball(R).
  // For d > 1 this is the cheap default, not the Tukey median.
  ProjectedMedian,
  // Drop floor(fraction*n) smallest and largest per coordinate, average,
  // project. fraction = 0 is the plain (projected) mean.
  TrimmedMean,
  // Grid point in ball(R) maximizing Tukey depth, d <= 3.
  TukeyMedianGrid,
  // Coordinate means, keep the k largest in magnitude (ties to the lower
  // index), zero the rest, project.
  TopKSparseMean,
};

struct RobustEstimatorSpec {
  EstimatorKind kind = EstimatorKind::ProjectedMedian;
  double radius = 1.0;         // output ball radius R
  int dim = 1;                 // record / output dimension d
  double trimFraction = 0.0;   // TrimmedMean only, must be < 1/2
  double gridResolution = 0.1; // TukeyMedianGrid only
  int sparsity = 1;            // TopKSparseMean only
  RobustnessProfile profile;   // claimed robustness
  // Largest corruption fraction the profile's analysis covers; calibrations
  // at a larger tau are refused rather than extrapolated.
  double profileMaxTau = 1.0;

  OutputRange range() const { return OutputRange{radius, dim}; }
};

// Evaluates the catalog estimator. Output always lies in ball(radius) and is
// a function of the multiset of records only.
Vec estimate(const RobustEstimatorSpec& spec, const Dataset& data);

// The catalog entry as a plain function, for oracles and mechanisms.
Estimator estimatorFn(const RobustEstimatorSpec& spec);

// Lower median of a value multiset: the ceil(n/2)-th order statistic.
double lowerMedian(std::vector<double> values);

// Normalized Tukey depth of t: (1/n) * min over directions v of the number
// of records on the closed halfspace {s : <s,v> >= <t,v>}. Exact for d = 1;
// for d in {2,3} exact over an enumerated candidate direction set that
// contains a minimizing direction for point sets in general position.
double tukeyDepth(const Dataset& data, std::span<const double> t,
                  Exec exec = Exec::Parallel);

// Grid point in ball(radius) maximizing tukeyDepth; ties broken to the
// lexicographically smallest point. The scan over grid points is the
// parallel kernel; Exec::Serial runs the reference loop.
Vec tukeyMedianGrid(const Dataset& data, double radius, double resolution,
                    Exec exec = Exec::Parallel);

// Deterministic surrogate of a randomized estimator: draws `samples` outputs
// with seeds derived from `seed`, and returns the candidate point whose
// alpha-ball captures the most draws (ties lexicographic).
using RandomizedEstimator = std::function<Vec(const Dataset&, std::uint64_t seed)>;
Vec derandomize(const RandomizedEstimator& alg, const Dataset& data,
                double alpha, const std::vector<Vec>& candidateGrid,
                std::size_t samples, std::uint64_t seed);

}  // namespace dpkit

#endif  // DPKIT_ESTIMATORS_HPP

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

#ifndef DPKIT_PARAMS_HPP
#define DPKIT_PARAMS_HPP

#include <cmath>
#include <cstddef>

#include "dpkit/errors.hpp"

namespace dpkit {

// (epsilon, delta) privacy target. delta = 0 means pure DP.
struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 0.0;

  void validate() const {
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
    if (!(delta >= 0.0 && delta < 1.0))
      throw ParameterError("delta must lie in [0, 1)");
  }
};

// Claimed (tau, beta, alpha) robustness of an estimator: with probability
// 1-beta over the clean sample, every corruption of at most floor(n*tau)
// records keeps the estimate within alpha of the true statistic.
struct RobustnessProfile {
  double tau = 0.0;    // corruption fraction in [0, 1]
  double beta = 0.05;  // failure probability in (0, 1)
  double alpha = 0.0;  // error bound, in the units of the evaluation loss

  void validate() const {
    if (!(tau >= 0.0 && tau <= 1.0)) throw ParameterError("tau must lie in [0, 1]");
    if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
    if (!(alpha >= 0.0)) throw ParameterError("alpha must be nonnegative");
  }
};

// Output space: the centered euclidean ball of the given radius.
struct OutputRange {
  double radius = 1.0;
  int dim = 1;

  void validate() const {
    if (!(radius > 0.0)) throw ParameterError("radius must be positive");
    if (dim < 1) throw ParameterError("dim must be positive");
  }
};

// A fraction tau of n records is an integer corruption count via floor.
inline std::size_t corruptionBudget(std::size_t n, double tau) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * tau));
}

}  // namespace dpkit

#endif  // DPKIT_PARAMS_HPP

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

#ifndef DPKIT_TRANSFORMS_HPP
#define DPKIT_TRANSFORMS_HPP

#include <string>

#include "dpkit/mechanisms.hpp"

namespace dpkit {

// Smallest corruption fraction under which the robust-to-private
// transformation certifies its error:
//   tau* = 2 (d log(R/alpha0 + 1) + log(1/beta)) / (n eps).
double calibrateTauStar(int d, double R, double alpha0, double beta,
                        std::size_t n, double epsilon);

enum class KVariant { Discrete, Continuous, Sparse, Truncated };

struct KParams {
  double epsilon = 1.0;
  int d = 1;
  double R = 1.0;
  double rho = 1.0;
  double beta = 0.05;
  double delta = 1e-6;        // Truncated
  double diameter = 2.0;      // Discrete
  std::size_t rangeSize = 1;  // Discrete
  int k = 1;                  // Sparse
};

// Corruption thresholds K from the utility statements:
//   discrete   ceil((2/eps) log(2 D |range| / (beta eps)))
//   continuous ceil(2 (d log(R/rho + 1) + log(1/beta)) / eps)
//   sparse     ceil(2 (k (log(ed/k) + log(R/rho + 1)) + log(1/beta)) / eps)
//   truncated  ceil((d + log(1/delta)) / eps)
int calibrateK(KVariant variant, const KParams& p);

enum class TransformMode { Pure, Approx };

// Outcome of assembling a transformation. When a precondition fails, the
// result is returned invalid with the violated inequality in `reason`;
// mechanisms reject invalid configurations rather than degrade.
struct CalibrationResult {
  bool valid = false;
  std::string reason;
  double tauStar = 0.0;   // required corruption fraction
  int K = 0;              // truncation threshold (approx mode)
  double claimedError = 0.0;  // 4*alpha (pure) or 7*alpha (approx)
  ScoreVariant variant = ScoreVariant::Smooth;
  MechanismConfig config;
};

// Robust-to-private: calibrates the smooth inverse-sensitivity mechanism
// (pure mode, rho = alpha0) or the PTR pipeline (approx mode, B = 2 alpha,
// rho = 2B, K = floor(n tau / 2) - 1) for a deterministic robust estimator.
// Estimators produced by derandomize() should have their profile adjusted
// with derandomizedProfile() first. gridStep = 0 picks rho/2.
CalibrationResult robustToPrivate(const RobustEstimatorSpec& rob,
                                  PrivacyBudget budget, double alpha0,
                                  TransformMode mode, std::size_t n,
                                  double gridStep = 0.0);

// Declared guarantees of a private algorithm: with probability 1-beta the
// eps-DP mechanism's error is at most alpha.
struct PrivateAlgSpec {
  double epsilon = 1.0;
  double beta = 0.05;
  double alpha = 0.0;
};

// Private-to-robust via group privacy: the mechanism is
// (log(1/gamma)/(n eps), beta/gamma, alpha)-robust.
RobustnessProfile privateToRobust(const PrivateAlgSpec& priv, double gamma,
                                  std::size_t n);

// Profile of the deterministic surrogate built by derandomize(): error and
// failure probability double.
RobustnessProfile derandomizedProfile(const RobustnessProfile& p);

// Draws from the mechanism a calibration selected (smooth, sparse, or the
// PTR pipeline). Refuses invalid calibrations outright.
MechanismOutput runCalibrated(const Dataset& data, const RobustEstimatorSpec& rob,
                              const CalibrationResult& cal, std::uint64_t seed,
                              Exec exec = Exec::Parallel);

}  // namespace dpkit

#endif  // DPKIT_TRANSFORMS_HPP

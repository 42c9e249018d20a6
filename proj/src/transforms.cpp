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

#include "dpkit/transforms.hpp"

#include <cmath>
#include <sstream>

namespace dpkit {

double calibrateTauStar(int d, double R, double alpha0, double beta,
                        std::size_t n, double epsilon) {
  if (!(alpha0 > 0.0)) throw ParameterError("alpha0 must be positive");
  if (!(alpha0 <= R)) throw ParameterError("alpha0 must not exceed R");
  if (d < 1 || !(R > 0.0) || !(beta > 0.0 && beta < 1.0) || n == 0 ||
      !(epsilon > 0.0))
    throw ParameterError("tau* arguments must be positive (beta in (0,1))");
  return 2.0 * (d * std::log(R / alpha0 + 1.0) + std::log(1.0 / beta)) /
         (static_cast<double>(n) * epsilon);
}

int calibrateK(KVariant variant, const KParams& p) {
  if (!(p.epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  double value = 0.0;
  switch (variant) {
    case KVariant::Discrete: {
      if (!(p.beta > 0.0) || !(p.diameter > 0.0) || p.rangeSize < 1)
        throw ParameterError("discrete K needs beta, diameter, rangeSize");
      value = 2.0 / p.epsilon *
              std::log(2.0 * p.diameter * static_cast<double>(p.rangeSize) /
                       (p.beta * p.epsilon));
      break;
    }
    case KVariant::Continuous: {
      if (!(p.rho > 0.0) || !(p.R > 0.0) || !(p.beta > 0.0) || p.d < 1)
        throw ParameterError("continuous K needs d, R, rho, beta");
      value = 2.0 *
              (p.d * std::log(p.R / p.rho + 1.0) + std::log(1.0 / p.beta)) /
              p.epsilon;
      break;
    }
    case KVariant::Sparse: {
      if (!(p.rho > 0.0) || !(p.R > 0.0) || !(p.beta > 0.0) || p.k < 1 ||
          p.d < p.k)
        throw ParameterError("sparse K needs k <= d, R, rho, beta");
      const double ed = std::exp(1.0) * p.d / static_cast<double>(p.k);
      value = 2.0 *
              (p.k * (std::log(ed) + std::log(p.R / p.rho + 1.0)) +
               std::log(1.0 / p.beta)) /
              p.epsilon;
      break;
    }
    case KVariant::Truncated: {
      if (!(p.delta > 0.0 && p.delta < 1.0) || p.d < 1)
        throw ParameterError("truncated K needs d and delta in (0,1)");
      value = (p.d + std::log(1.0 / p.delta)) / p.epsilon;
      break;
    }
  }
  return static_cast<int>(std::ceil(value));
}

namespace {

CalibrationResult invalid(std::string reason) {
  CalibrationResult r;
  r.valid = false;
  r.reason = std::move(reason);
  return r;
}

}  // namespace

CalibrationResult robustToPrivate(const RobustEstimatorSpec& rob,
                                  PrivacyBudget budget, double alpha0,
                                  TransformMode mode, std::size_t n,
                                  double gridStep) {
  budget.validate();
  rob.profile.validate();
  if (n == 0) throw ParameterError("n must be positive");
  const double alpha = rob.profile.alpha;
  const double beta = rob.profile.beta;
  const double eps = budget.epsilon;

  CalibrationResult res;
  res.config.budget = budget;
  res.config.beta = beta;
  res.config.range = rob.range();

  if (rob.profile.tau > rob.profileMaxTau) {
    std::ostringstream os;
    os << "profile tau " << rob.profile.tau
       << " exceeds the validity gate max tau " << rob.profileMaxTau;
    return invalid(os.str());
  }

  if (mode == TransformMode::Pure) {
    if (!(alpha0 > 0.0)) throw ParameterError("alpha0 must be positive");
    if (alpha0 > alpha) {
      std::ostringstream os;
      os << "alpha0 " << alpha0 << " exceeds the robust alpha " << alpha;
      return invalid(os.str());
    }
    const int dim = res.config.range.dim;
    double tauStar;
    if (rob.kind == EstimatorKind::TopKSparseMean) {
      // Sparse estimators route through the sparse score and its threshold.
      KParams kp;
      kp.epsilon = eps;
      kp.d = dim;
      kp.k = rob.sparsity;
      kp.R = rob.radius;
      kp.rho = alpha0;
      kp.beta = beta;
      tauStar = static_cast<double>(calibrateK(KVariant::Sparse, kp)) /
                static_cast<double>(n);
      res.variant = ScoreVariant::Sparse;
    } else {
      tauStar = calibrateTauStar(dim, rob.radius, alpha0, beta, n, eps);
      res.variant = ScoreVariant::Smooth;
    }
    res.tauStar = tauStar;
    if (rob.profile.tau < tauStar) {
      std::ostringstream os;
      os << "profile tau " << rob.profile.tau << " is below tau* " << tauStar;
      return invalid(os.str());
    }
    // The utility argument spends K = n tau* corruptions.
    res.K = static_cast<int>(std::ceil(tauStar * static_cast<double>(n)));
    res.config.rho = alpha0;
    res.config.gridStep = gridStep > 0.0 ? gridStep : alpha0 / 2.0;
    res.claimedError = 4.0 * alpha;
    res.valid = true;
    return res;
  }

  // Approximate DP via PTR.
  if (!(budget.delta > 0.0))
    return invalid("approx mode requires delta > 0");
  const int dim = res.config.range.dim;
  const double tauFloor =
      8.0 * (dim + std::log(1.0 / std::min(budget.delta, beta))) /
      (static_cast<double>(n) * eps);
  res.tauStar = tauFloor;
  if (rob.profile.tau < tauFloor) {
    std::ostringstream os;
    os << "profile tau " << rob.profile.tau
       << " is below 8(d+log(1/min(delta,beta)))/(n eps) = " << tauFloor;
    return invalid(os.str());
  }
  const auto K = static_cast<int>(
      std::floor(static_cast<double>(n) * rob.profile.tau / 2.0)) - 1;
  if (K < 1) return invalid("n tau / 2 - 1 must be at least 1");
  res.K = K;
  res.config.truncationK = K;
  res.config.modulusBound = 2.0 * alpha;
  res.config.rho = 2.0 * res.config.modulusBound;  // rho = 2B = 4 alpha
  res.config.gridStep = gridStep > 0.0 ? gridStep : res.config.rho / 2.0;
  res.claimedError = 7.0 * alpha;
  res.variant = ScoreVariant::Truncated;
  res.valid = true;
  return res;
}

RobustnessProfile privateToRobust(const PrivateAlgSpec& priv, double gamma,
                                  std::size_t n) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw ParameterError("gamma must lie in (0, 1)");
  if (!(priv.epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (n == 0) throw ParameterError("n must be positive");
  const double betaOut = priv.beta / gamma;
  if (!(betaOut < 1.0))
    throw ParameterError("derived failure probability beta/gamma reaches 1; the claim is vacuous");
  RobustnessProfile p;
  p.tau = std::log(1.0 / gamma) / (static_cast<double>(n) * priv.epsilon);
  p.beta = betaOut;
  p.alpha = priv.alpha;
  return p;
}

RobustnessProfile derandomizedProfile(const RobustnessProfile& p) {
  RobustnessProfile out = p;
  out.alpha = 2.0 * p.alpha;
  out.beta = 2.0 * p.beta;
  if (!(out.beta < 1.0))
    throw ParameterError("doubled failure probability reaches 1");
  return out;
}

MechanismOutput runCalibrated(const Dataset& data, const RobustEstimatorSpec& rob,
                              const CalibrationResult& cal, std::uint64_t seed,
                              Exec exec) {
  if (!cal.valid)
    throw ConfigError("calibration is invalid: " + cal.reason);
  switch (cal.variant) {
    case ScoreVariant::Smooth:
      return smoothInvMech(data, cal.config, autoOracle(rob, data), seed, exec);
    case ScoreVariant::Sparse: {
      const LenOracle oracle = autoOracle(rob, data);
      const ScoreField field =
          buildMechanismField(data, cal.config, oracle, ScoreVariant::Sparse, exec);
      MechanismOutput out = expMechFinite(field, cal.config.budget.epsilon, seed);
      out.seed = seed;
      return out;
    }
    case ScoreVariant::Truncated:
      return ptrPipeline(data, rob, cal.config, seed, exec);
  }
  throw ConfigError("unknown mechanism variant");
}

}  // namespace dpkit

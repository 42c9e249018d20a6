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

#include "doctest.h"
#include "dpkit/rng.hpp"
#include "dpkit/synth.hpp"

using namespace dpkit;

TEST_SUITE_BEGIN("transforms");

TEST_CASE("tau* closed form and limits") {
  // d=1, R=3, alpha0=1, beta=1/e, n=100, eps=0.1: 2(ln 4 + 1)/10.
  const double t = calibrateTauStar(1, 3.0, 1.0, std::exp(-1.0), 100, 0.1);
  CHECK(t == doctest::Approx(2.0 * (std::log(4.0) + 1.0) / 10.0));

  CHECK(calibrateTauStar(1, 3.0, 1.0, 0.1, 100, 1e6) < 1e-5);
  const double t1 = calibrateTauStar(2, 5.0, 0.5, 0.05, 400, 1.0);
  const double t2 = calibrateTauStar(2, 5.0, 0.5, 0.05, 800, 1.0);
  CHECK(t1 == doctest::Approx(2.0 * t2));  // 1/n scaling

  CHECK_THROWS_AS((void)calibrateTauStar(1, 3.0, 0.0, 0.1, 100, 1.0),
                  ParameterError);
}

TEST_CASE("tau* monotone on random tuples") {
  SplitMix64 rng(41);
  for (int rep = 0; rep < 1000; ++rep) {
    const int d = 1 + static_cast<int>(rng.nextU64() % 5);
    const double R = 1.0 + 9.0 * rng.nextUniform();
    const double a0 = R * (0.05 + 0.5 * rng.nextUniform());
    const double beta = 0.01 + 0.4 * rng.nextUniform();
    const std::size_t n = 50 + rng.nextU64() % 1000;
    const double eps = 0.1 + 2.0 * rng.nextUniform();
    const double base = calibrateTauStar(d, R, a0, beta, n, eps);
    CHECK(calibrateTauStar(d, R, a0, beta, n + 100, eps) < base);
    CHECK(calibrateTauStar(d, R, a0, beta, n, eps + 0.5) < base);
    CHECK(calibrateTauStar(d + 1, R, a0, beta, n, eps) > base);
    if (a0 / 2.0 > 0.0)
      CHECK(calibrateTauStar(d, R, a0 / 2.0, beta, n, eps) > base);
  }
}

TEST_CASE("K thresholds") {
  KParams p;
  p.epsilon = 1.0;
  p.d = 1;
  p.R = 1.0;
  p.rho = 1.0;
  p.beta = std::exp(-2.0);
  CHECK(calibrateK(KVariant::Continuous, p) == 6);  // ceil(2 ln 2 + 4)

  KParams t;
  t.epsilon = 1.0;
  t.d = 2;
  t.delta = std::exp(-8.0);
  CHECK(calibrateK(KVariant::Truncated, t) == 10);

  KParams disc;
  disc.epsilon = 0.5;
  disc.beta = 0.05;
  disc.diameter = 4.0;
  disc.rangeSize = 81;
  const double want = 2.0 / 0.5 * std::log(2.0 * 4.0 * 81 / (0.05 * 0.5));
  CHECK(calibrateK(KVariant::Discrete, disc) == static_cast<int>(std::ceil(want)));
}

// With k = d the sparse threshold adds exactly the d log(e) term.
TEST_CASE("sparse K versus continuous K on random tuples") {
  SplitMix64 rng(43);
  for (int rep = 0; rep < 100; ++rep) {
    KParams p;
    p.epsilon = 0.2 + 2.0 * rng.nextUniform();
    p.d = 1 + static_cast<int>(rng.nextU64() % 8);
    p.k = p.d;
    p.R = 1.0 + 5.0 * rng.nextUniform();
    p.rho = p.R * (0.05 + 0.4 * rng.nextUniform());
    p.beta = 0.01 + 0.4 * rng.nextUniform();
    const int cont = calibrateK(KVariant::Continuous, p);
    const int sparse = calibrateK(KVariant::Sparse, p);
    CHECK(sparse >= cont);
    CHECK(sparse <= cont + static_cast<int>(std::ceil(2.0 * p.d / p.epsilon)) + 1);
  }
}

TEST_CASE("robust-to-private, pure mode") {
  RobustEstimatorSpec rob;
  rob.kind = EstimatorKind::ProjectedMedian;
  rob.radius = 5.0;
  rob.profile = RobustnessProfile{0.3, 0.05, 0.8};

  const std::size_t n = 500;
  const double alpha0 = 0.2;
  const auto good = robustToPrivate(rob, PrivacyBudget{1.0, 0.0}, alpha0,
                                    TransformMode::Pure, n);
  REQUIRE(good.valid);
  CHECK(good.claimedError == doctest::Approx(4.0 * rob.profile.alpha));
  CHECK(good.config.rho == alpha0);
  CHECK(good.config.gridStep <= good.config.rho);
  CHECK(good.variant == ScoreVariant::Smooth);
  CHECK(rob.profile.tau >= good.tauStar);

  // tau below tau*: invalid, reason names the inequality, config unusable.
  RobustEstimatorSpec weak = rob;
  weak.profile.tau = 1e-4;
  const auto badCal = robustToPrivate(weak, PrivacyBudget{1.0, 0.0}, alpha0,
                                      TransformMode::Pure, n);
  CHECK(!badCal.valid);
  CHECK(badCal.reason.find("tau*") != std::string::npos);
  CHECK_THROWS_AS(badCal.config.validate(), ConfigError);

  // alpha0 above alpha: invalid.
  const auto badAlpha = robustToPrivate(rob, PrivacyBudget{1.0, 0.0}, 2.0,
                                        TransformMode::Pure, n);
  CHECK(!badAlpha.valid);
}

TEST_CASE("robust-to-private, approx mode sets the PTR parameters") {
  RobustEstimatorSpec rob;
  rob.kind = EstimatorKind::ProjectedMedian;
  rob.radius = 10.0;
  rob.profile = RobustnessProfile{0.4, 1e-3, 0.5};
  const std::size_t n = 500;
  const auto cal = robustToPrivate(rob, PrivacyBudget{1.0, 1e-3}, 0.1,
                                   TransformMode::Approx, n);
  REQUIRE(cal.valid);
  CHECK(cal.variant == ScoreVariant::Truncated);
  CHECK(cal.config.modulusBound == doctest::Approx(2.0 * rob.profile.alpha));
  CHECK(cal.config.rho == doctest::Approx(4.0 * rob.profile.alpha));
  CHECK(cal.K == static_cast<int>(std::floor(n * rob.profile.tau / 2.0)) - 1);
  CHECK(cal.claimedError == doctest::Approx(7.0 * rob.profile.alpha));

  RobustEstimatorSpec weak = rob;
  weak.profile.tau = 0.005;
  const auto bad = robustToPrivate(weak, PrivacyBudget{1.0, 1e-3}, 0.1,
                                   TransformMode::Approx, n);
  CHECK(!bad.valid);
}

TEST_CASE("sparse estimators route through the sparse score") {
  RobustEstimatorSpec rob;
  rob.kind = EstimatorKind::TopKSparseMean;
  rob.radius = 1.0;
  rob.dim = 20;
  rob.sparsity = 2;
  rob.profile = RobustnessProfile{0.9, 0.05, 0.5};
  const auto cal = robustToPrivate(rob, PrivacyBudget{1.0, 0.0}, 0.25,
                                   TransformMode::Pure, 1000);
  REQUIRE(cal.valid);
  CHECK(cal.variant == ScoreVariant::Sparse);
  CHECK(cal.config.range.dim == 20);
}

TEST_CASE("validity gate on the profile's tau range") {
  RobustEstimatorSpec rob;
  rob.kind = EstimatorKind::TukeyMedianGrid;
  rob.radius = 2.0;
  rob.dim = 2;
  rob.profileMaxTau = 0.05;
  rob.profile = RobustnessProfile{0.2, 0.05, 0.5};  // beyond the analysis
  const auto cal = robustToPrivate(rob, PrivacyBudget{1.0, 0.0}, 0.1,
                                   TransformMode::Pure, 100000);
  CHECK(!cal.valid);
  CHECK(cal.reason.find("validity gate") != std::string::npos);
}

// Gate soundness: invalid calibrations never reach a mechanism.
TEST_CASE("runCalibrated dispatches per variant and refuses invalid results") {
  RobustEstimatorSpec rob;
  rob.kind = EstimatorKind::ProjectedMedian;
  rob.radius = 5.0;
  rob.profile = RobustnessProfile{0.3, 0.05, 0.8};
  const Dataset data = genGaussianSpherical(200, {0.5}, 1.0, 3);

  const auto good = robustToPrivate(rob, PrivacyBudget{1.0, 0.0}, 0.2,
                                    TransformMode::Pure, data.size());
  REQUIRE(good.valid);
  const MechanismOutput out = runCalibrated(data, rob, good, 11);
  CHECK(!out.isBottom());
  CHECK(norm2(*out.value) <= rob.radius + good.config.rho + good.config.gridStep);

  RobustEstimatorSpec weak = rob;
  weak.profile.tau = 1e-4;
  const auto bad = robustToPrivate(weak, PrivacyBudget{1.0, 0.0}, 0.2,
                                   TransformMode::Pure, data.size());
  REQUIRE(!bad.valid);
  CHECK_THROWS_AS((void)runCalibrated(data, weak, bad, 11), ConfigError);

  // Approx mode routes through the PTR pipeline.
  RobustEstimatorSpec strong = rob;
  strong.radius = 10.0;
  strong.profile = RobustnessProfile{0.4, 1e-2, 0.6};
  const auto approx = robustToPrivate(strong, PrivacyBudget{1.0, 1e-2}, 0.2,
                                      TransformMode::Approx, data.size());
  REQUIRE(approx.valid);
  const MechanismOutput ptrOut = runCalibrated(data, strong, approx, 13);
  CHECK(ptrOut.noisyDistance.has_value());
}

TEST_CASE("private-to-robust closed form") {
  const PrivateAlgSpec priv{1.0, 1e-3, 0.2};
  const RobustnessProfile p = privateToRobust(priv, std::exp(-1.0), 400);
  CHECK(p.tau == doctest::Approx(1.0 / 400.0));
  CHECK(p.beta == doctest::Approx(std::exp(1.0) * 1e-3));
  CHECK(p.alpha == 0.2);

  // gamma -> 1 claims no corruption tolerance.
  const RobustnessProfile tiny = privateToRobust(priv, 0.999999, 400);
  CHECK(tiny.tau < 1e-8);

  CHECK_THROWS_AS((void)privateToRobust(priv, 1.5, 400), ParameterError);
  CHECK_THROWS_AS((void)privateToRobust(priv, 0.0, 400), ParameterError);
  CHECK_THROWS_AS((void)privateToRobust(PrivateAlgSpec{1.0, 0.5, 0.2}, 0.25, 400),
                  ParameterError);  // beta/gamma = 2
}

// Composing the two directions (with the derandomization doubling) costs at
// most a factor 8 in the claimed error. At gamma = 1/e the derived tau is
// 1/(n eps), which always sits below tau* (tau* n eps >= 2 ln 2 for any
// alpha0 <= R), so the gate must refuse; a polynomially small gamma buys
// enough corruption budget for a valid calibration.
TEST_CASE("round trip: private -> robust -> private") {
  SplitMix64 rng(59);
  int checkedInvalid = 0, checkedValid = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const double eps = 0.25 + 2.0 * rng.nextUniform();
    const double alphaPriv = 0.05 + 0.5 * rng.nextUniform();
    const double beta = 1e-6 + 1e-5 * rng.nextUniform();
    const std::size_t n = 1000 + rng.nextU64() % 100000;
    const double R = 1.0;
    const PrivateAlgSpec priv{eps, beta, alphaPriv};

    // gamma = 1/e: the gate matches the tau >= tau* predicate exactly.
    {
      const RobustnessProfile profile =
          derandomizedProfile(privateToRobust(priv, std::exp(-1.0), n));
      RobustEstimatorSpec rob;
      rob.kind = EstimatorKind::ProjectedMedian;
      rob.radius = R;
      rob.profile = profile;
      const double alpha0 = std::min(profile.alpha, alphaPriv);
      const auto cal = robustToPrivate(rob, PrivacyBudget{eps, 0.0}, alpha0,
                                       TransformMode::Pure, n);
      const double tauStar = calibrateTauStar(1, R, alpha0, profile.beta, n, eps);
      CHECK(cal.valid == (profile.tau >= tauStar));
      if (!cal.valid) ++checkedInvalid;
    }

    // gamma small enough that log(1/gamma) covers tau* n eps.
    {
      const RobustnessProfile base = privateToRobust(priv, 1e-4, n);
      const RobustnessProfile profile = derandomizedProfile(base);
      RobustEstimatorSpec rob;
      rob.kind = EstimatorKind::ProjectedMedian;
      rob.radius = R;
      rob.profile = profile;
      const double alpha0 = std::min(profile.alpha, alphaPriv);
      const double tauStar = calibrateTauStar(1, R, alpha0, profile.beta, n, eps);
      if (profile.tau < tauStar) continue;
      const auto cal = robustToPrivate(rob, PrivacyBudget{eps, 0.0}, alpha0,
                                       TransformMode::Pure, n);
      REQUIRE(cal.valid);
      CHECK(cal.claimedError <= 8.0 * alphaPriv + 1e-12);
      ++checkedValid;
    }
  }
  CHECK(checkedInvalid == 400);
  CHECK(checkedValid > 300);
}

TEST_SUITE_END();

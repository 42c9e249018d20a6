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

#include "dpkit/synth.hpp"

#include "dpkit/rng.hpp"

namespace dpkit {

Dataset genGaussian(std::size_t n, const Vec& mu, const Eigen::MatrixXd& sigma,
                    std::uint64_t seed) {
  const auto d = static_cast<Eigen::Index>(mu.size());
  if (d == 0) throw ParameterError("mu must be nonempty");
  if (sigma.rows() != d || sigma.cols() != d)
    throw ParameterError("sigma shape does not match mu");
  if (!sigma.isApprox(sigma.transpose(), 1e-12))
    throw ParameterError("sigma must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw ParameterError("sigma must be positive definite");
  const Eigen::MatrixXd chol = llt.matrixL();

  Dataset out(n, mu.size());
  SplitMix64 rng(seed);
  Eigen::VectorXd z(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) z[j] = rng.nextGaussian();
    const Eigen::VectorXd x = chol * z;
    for (Eigen::Index j = 0; j < d; ++j)
      out.at(i, static_cast<std::size_t>(j)) = mu[static_cast<std::size_t>(j)] + x[j];
  }
  return out;
}

Dataset genGaussianSpherical(std::size_t n, const Vec& mu, double stddev,
                             std::uint64_t seed) {
  if (!(stddev > 0.0)) throw ParameterError("stddev must be positive");
  const auto d = static_cast<Eigen::Index>(mu.size());
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(d, d) * (stddev * stddev);
  return genGaussian(n, mu, sigma, seed);
}

}  // namespace dpkit

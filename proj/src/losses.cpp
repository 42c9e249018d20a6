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

#include "dpkit/losses.hpp"

namespace dpkit {

Loss Loss::mahalanobis(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols())
    throw ParameterError("sigma must be square");
  if (!sigma.isApprox(sigma.transpose(), 1e-12))
    throw ParameterError("sigma must be symmetric");
  auto llt = std::make_shared<Eigen::LLT<Eigen::MatrixXd>>(sigma);
  if (llt->info() != Eigen::Success)
    throw ParameterError("sigma must be positive definite");
  Loss loss(LossKind::Mahalanobis);
  loss.llt_ = std::move(llt);
  return loss;
}

double Loss::operator()(std::span<const double> u,
                        std::span<const double> v) const {
  if (u.size() != v.size()) throw ParameterError("loss dimension mismatch");
  if (kind_ == LossKind::Euclidean) return dist2(u, v);

  const auto d = static_cast<Eigen::Index>(u.size());
  if (llt_->matrixL().rows() != d)
    throw ParameterError("loss dimension does not match sigma");
  Eigen::VectorXd r(d);
  for (Eigen::Index i = 0; i < d; ++i)
    r[i] = u[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)];
  // ||r||_Sigma = ||L^-1 r||_2 where Sigma = L L'.
  const Eigen::VectorXd y =
      llt_->matrixL().solve(r);
  return y.norm();
}

}  // namespace dpkit

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

#ifndef DPKIT_LOSSES_HPP
#define DPKIT_LOSSES_HPP

#include <Eigen/Dense>
#include <memory>
#include <span>

#include "dpkit/errors.hpp"
#include "dpkit/vec.hpp"

namespace dpkit {

enum class LossKind { Euclidean, Mahalanobis };

// Evaluation norm for error reporting. Euclidean is the l2 distance; the
// Mahalanobis variant is ||u - v||_Sigma = sqrt((u-v)' Sigma^-1 (u-v)) for a
// positive definite Sigma. Both satisfy the triangle inequality.
class Loss {
 public:
  static Loss euclidean() { return Loss(LossKind::Euclidean); }
  static Loss mahalanobis(const Eigen::MatrixXd& sigma);

  double operator()(std::span<const double> u, std::span<const double> v) const;

  LossKind kind() const { return kind_; }

 private:
  explicit Loss(LossKind k) : kind_(k) {}

  LossKind kind_;
  // Cholesky factor of Sigma, shared so Loss stays cheap to copy.
  std::shared_ptr<const Eigen::LLT<Eigen::MatrixXd>> llt_;
};

}  // namespace dpkit

#endif  // DPKIT_LOSSES_HPP

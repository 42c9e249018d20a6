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

#ifndef DPKIT_SYNTH_HPP
#define DPKIT_SYNTH_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "dpkit/dataset.hpp"

namespace dpkit {

// n i.i.d. draws from N(mu, sigma). sigma must be positive definite.
// Bit-identical output for identical (n, mu, sigma, seed).
Dataset genGaussian(std::size_t n, const Vec& mu, const Eigen::MatrixXd& sigma,
                    std::uint64_t seed);

// Spherical shortcut: N(mu, stddev^2 * I).
Dataset genGaussianSpherical(std::size_t n, const Vec& mu, double stddev,
                             std::uint64_t seed);

}  // namespace dpkit

#endif  // DPKIT_SYNTH_HPP

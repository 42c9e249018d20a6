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

#ifndef DPKIT_RNG_HPP
#define DPKIT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace dpkit {

namespace detail {
// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on uint64.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}  // namespace detail

/*
 * Counter-based generator: the i-th output is mix64(seed + i*golden), a pure
 * function of (seed, i). Output streams are therefore identical across
 * platforms and independent of how many values were drawn elsewhere.
 * All randomized operations in this library take an explicit seed and build
 * one of these locally; nothing shares mutable generator state.
 */
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t nextU64() { return detail::mix64(state_ += detail::kGolden); }

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double nextUniform() {
    return (static_cast<double>(nextU64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller. Always consumes exactly two uniforms so
  // the stream position does not depend on the values drawn.
  double nextGaussian() {
    const double u1 = nextUniform();
    const double u2 = nextUniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  // Laplace(0, scale) by inverse CDF.
  double nextLaplace(double scale) {
    const double u = nextUniform() - 0.5;
    return u < 0.0 ? scale * std::log1p(2.0 * u) : -scale * std::log1p(-2.0 * u);
  }

 private:
  static constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::uint64_t state_;
};

// Child seed for (master, stream, index): three chained mix64 rounds. Trial
// loops derive one seed per (stream, trial index) and never share a generator,
// which keeps results independent of scheduling.
inline std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t stream,
                                std::uint64_t index) {
  std::uint64_t h = detail::mix64(master ^ detail::kGolden);
  h = detail::mix64(h + detail::kGolden * (stream + 1));
  h = detail::mix64(h + detail::kGolden * (index + 1));
  return h;
}

}  // namespace dpkit

#endif  // DPKIT_RNG_HPP

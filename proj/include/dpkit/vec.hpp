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

#ifndef DPKIT_VEC_HPP
#define DPKIT_VEC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace dpkit {

// Points and estimates are plain dense vectors of doubles.
using Vec = std::vector<double>;

inline double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

inline double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

inline double dist2(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Number of nonzero coordinates.
inline std::size_t l0Norm(std::span<const double> v) {
  std::size_t c = 0;
  for (double x : v)
    if (x != 0.0) ++c;
  return c;
}

// Euclidean projection onto the centered ball of the given radius.
// Idempotent and 1-Lipschitz.
inline Vec projectToBall(Vec v, double radius) {
  const double n = norm2(v);
  if (n > radius && n > 0.0) {
    const double s = radius / n;
    for (double& x : v) x *= s;
  }
  return v;
}

// Total order used for all deterministic tie-breaking.
inline bool lexLess(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace dpkit

#endif  // DPKIT_VEC_HPP

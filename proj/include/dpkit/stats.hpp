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

#ifndef DPKIT_STATS_HPP
#define DPKIT_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "dpkit/errors.hpp"

namespace dpkit {

inline double normalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Upper empirical q-quantile: the order statistic of rank ceil(q*T).
inline double quantileUpper(std::vector<double> values, double q) {
  if (values.empty()) throw ParameterError("quantile of empty sample");
  if (!(q > 0.0 && q <= 1.0)) throw ParameterError("quantile must lie in (0, 1]");
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(values.size())));
  return values[std::min(values.size(), std::max<std::size_t>(rank, 1)) - 1];
}

// Wilson score interval for a binomial proportion.
inline double wilsonLower(std::size_t successes, std::size_t total, double z) {
  if (total == 0) throw ParameterError("empty sample");
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::max(0.0, (center - half) / denom);
}

inline double wilsonUpper(std::size_t successes, std::size_t total, double z) {
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::min(1.0, (center + half) / denom);
}

// Chi-square upper critical value via the Wilson-Hilferty approximation.
inline double chiSquareCritical(std::size_t df, double tail, double zTail) {
  if (df == 0) throw ParameterError("df must be positive");
  (void)tail;  // zTail is the standard normal quantile for the tail
  const double k = static_cast<double>(df);
  const double a = 2.0 / (9.0 * k);
  const double c = 1.0 - a + zTail * std::sqrt(a);
  return k * c * c * c;
}

// Pearson chi-square statistic of observed counts against expected
// probabilities (cells with negligible expectation are pooled).
inline double chiSquareStat(const std::vector<std::size_t>& observed,
                            const std::vector<double>& expectedProb,
                            std::size_t total, std::size_t* dfOut) {
  double stat = 0.0;
  std::size_t df = 0;
  double pooledExp = 0.0;
  double pooledObs = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expectedProb[i] * static_cast<double>(total);
    if (e < 5.0) {
      pooledExp += e;
      pooledObs += static_cast<double>(observed[i]);
      continue;
    }
    const double d = static_cast<double>(observed[i]) - e;
    stat += d * d / e;
    ++df;
  }
  if (pooledExp >= 5.0) {
    const double d = pooledObs - pooledExp;
    stat += d * d / pooledExp;
    ++df;
  }
  if (dfOut) *dfOut = df > 1 ? df - 1 : 1;
  return stat;
}

}  // namespace dpkit

#endif  // DPKIT_STATS_HPP

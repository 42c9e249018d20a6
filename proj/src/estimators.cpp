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

#include "dpkit/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dpkit/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dpkit {

double lowerMedian(std::vector<double> values) {
  if (values.empty()) throw ParameterError("median of empty sample");
  const std::size_t idx = (values.size() - 1) / 2;  // ceil(n/2)-th, 0-based
  std::nth_element(values.begin(), values.begin() + idx, values.end());
  return values[idx];
}

namespace {

Vec coordinateMedians(const Dataset& data) {
  Vec out(data.dim());
  for (std::size_t j = 0; j < data.dim(); ++j)
    out[j] = lowerMedian(data.column(j));
  return out;
}

Vec trimmedMean(const Dataset& data, double fraction) {
  if (!(fraction >= 0.0 && fraction < 0.5))
    throw ParameterError("trim fraction must lie in [0, 1/2)");
  const std::size_t n = data.size();
  const auto g = static_cast<std::size_t>(std::floor(fraction * n));
  Vec out(data.dim());
  for (std::size_t j = 0; j < data.dim(); ++j) {
    auto col = data.column(j);
    std::sort(col.begin(), col.end());
    double s = 0.0;
    for (std::size_t i = g; i < n - g; ++i) s += col[i];
    out[j] = s / static_cast<double>(n - 2 * g);
  }
  return out;
}

Vec topKSparseMean(const Dataset& data, int k) {
  if (k < 1) throw ParameterError("sparsity k must be positive");
  const std::size_t n = data.size();
  Vec mean(data.dim(), 0.0);
  // Summing in sorted order keeps the estimator a bit-exact function of the
  // record multiset.
  for (std::size_t j = 0; j < data.dim(); ++j) {
    auto col = data.column(j);
    std::sort(col.begin(), col.end());
    double s = 0.0;
    for (double x : col) s += x;
    mean[j] = s / static_cast<double>(n);
  }
  if (static_cast<std::size_t>(k) >= data.dim()) return mean;

  std::vector<std::size_t> order(data.dim());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(mean[a]) > std::abs(mean[b]);
  });
  Vec out(data.dim(), 0.0);
  for (int i = 0; i < k; ++i) out[order[static_cast<std::size_t>(i)]] =
      mean[order[static_cast<std::size_t>(i)]];
  return out;
}

// Minimum, over enumerated directions, of the number of records in the
// closed halfspace through t. Returns a count; divide by n for the depth.
std::size_t tukeyDepthCount(const Dataset& data, std::span<const double> t,
                            Exec exec);

}  // namespace

Vec estimate(const RobustEstimatorSpec& spec, const Dataset& data) {
  if (data.empty()) throw ParameterError("estimation requires n >= 1");
  if (static_cast<int>(data.dim()) != spec.dim)
    throw ParameterError("dataset dimension does not match the estimator spec");
  switch (spec.kind) {
    case EstimatorKind::ProjectedMedian:
      return projectToBall(coordinateMedians(data), spec.radius);
    case EstimatorKind::TrimmedMean:
      return projectToBall(trimmedMean(data, spec.trimFraction), spec.radius);
    case EstimatorKind::TukeyMedianGrid:
      return tukeyMedianGrid(data, spec.radius, spec.gridResolution);
    case EstimatorKind::TopKSparseMean:
      return projectToBall(topKSparseMean(data, spec.sparsity), spec.radius);
  }
  throw ParameterError("unknown estimator kind");
}

Estimator estimatorFn(const RobustEstimatorSpec& spec) {
  return [spec](const Dataset& data) { return estimate(spec, data); };
}

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kHalfPi = kPi / 2.0;

std::size_t depthCount1d(const Dataset& data, double t) {
  std::size_t ge = 0, le = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double x = data.at(i, 0);
    if (x >= t) ++ge;
    if (x <= t) ++le;
  }
  return std::min(ge, le);
}

std::size_t countHalfspace(const std::vector<Vec>& diffs, std::span<const double> v,
                           std::size_t equalCount) {
  std::size_t c = equalCount;
  for (const Vec& u : diffs) {
    if (dot(u, v) >= 0.0) ++c;
  }
  return c;
}

std::size_t depthCountDirections(const std::vector<Vec>& diffs,
                                 const std::vector<Vec>& directions,
                                 std::size_t equalCount, Exec exec) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  const auto m = static_cast<std::int64_t>(directions.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel
    {
      std::size_t local = std::numeric_limits<std::size_t>::max();
#pragma omp for nowait
      for (std::int64_t i = 0; i < m; ++i) {
        local = std::min(local,
                         countHalfspace(diffs, directions[static_cast<std::size_t>(i)],
                                        equalCount));
      }
#pragma omp critical
      best = std::min(best, local);
    }
  } else {
    for (std::int64_t i = 0; i < m; ++i)
      best = std::min(best, countHalfspace(
                                diffs, directions[static_cast<std::size_t>(i)],
                                equalCount));
  }
  return best;
}

std::size_t depthCount2d(const Dataset& data, std::span<const double> t, Exec exec) {
  std::vector<Vec> diffs;
  std::size_t equalCount = 0;
  diffs.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto r = data.record(i);
    const double dx = r[0] - t[0], dy = r[1] - t[1];
    if (dx == 0.0 && dy == 0.0) {
      ++equalCount;  // lies in every closed halfspace through t
    } else {
      diffs.push_back({dx, dy});
    }
  }
  if (diffs.empty()) return equalCount;

  // The closed-halfplane count as a function of the direction angle changes
  // only where the boundary crosses a point, i.e. at phi_i +- pi/2. Evaluate
  // at those critical angles and at midpoints between consecutive ones.
  std::vector<double> critical;
  critical.reserve(2 * diffs.size());
  for (const Vec& u : diffs) {
    const double phi = std::atan2(u[1], u[0]);
    for (double c : {phi + kHalfPi, phi - kHalfPi}) {
      if (c > kPi) c -= 2.0 * kPi;
      if (c < -kPi) c += 2.0 * kPi;
      critical.push_back(c);
    }
  }
  std::sort(critical.begin(), critical.end());

  std::vector<Vec> directions;
  directions.reserve(2 * critical.size() + 4);
  for (std::size_t i = 0; i < critical.size(); ++i) {
    const double a = critical[i];
    const double b = i + 1 < critical.size() ? critical[i + 1] : critical[0] + 2.0 * kPi;
    directions.push_back({std::cos(a), std::sin(a)});
    const double mid = 0.5 * (a + b);
    directions.push_back({std::cos(mid), std::sin(mid)});
  }
  directions.push_back({1.0, 0.0});
  directions.push_back({-1.0, 0.0});
  directions.push_back({0.0, 1.0});
  directions.push_back({0.0, -1.0});

  return depthCountDirections(diffs, directions, equalCount, exec);
}

std::size_t depthCount3d(const Dataset& data, std::span<const double> t, Exec exec) {
  std::vector<Vec> diffs;
  std::size_t equalCount = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto r = data.record(i);
    Vec u = {r[0] - t[0], r[1] - t[1], r[2] - t[2]};
    if (u[0] == 0.0 && u[1] == 0.0 && u[2] == 0.0) {
      ++equalCount;
    } else {
      const double s = norm2(u);
      for (double& x : u) x /= s;
      diffs.push_back(std::move(u));
    }
  }
  if (diffs.empty()) return equalCount;

  // Candidate normals: for every pair, the plane through both points (and t),
  // nudged into the four adjacent cells so that boundary points can fall on
  // either side; plus signed axes and the point directions themselves.
  constexpr double kNudge = 1e-7;
  std::vector<Vec> directions;
  const std::size_t m = diffs.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Vec& a = diffs[i];
      const Vec& b = diffs[j];
      Vec v = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
               a[0] * b[1] - a[1] * b[0]};
      const double nv = norm2(v);
      if (nv < 1e-12) continue;  // collinear through t
      for (double& x : v) x /= nv;
      const double ab = dot(a, b);
      // Dual-ish perturbations: wa moves point i off the plane without
      // moving point j, and vice versa.
      Vec wa(3), wb(3);
      for (int c = 0; c < 3; ++c) {
        wa[static_cast<std::size_t>(c)] =
            a[static_cast<std::size_t>(c)] - ab * b[static_cast<std::size_t>(c)];
        wb[static_cast<std::size_t>(c)] =
            b[static_cast<std::size_t>(c)] - ab * a[static_cast<std::size_t>(c)];
      }
      for (int sv : {1, -1}) {
        Vec base(3);
        for (int c = 0; c < 3; ++c)
          base[static_cast<std::size_t>(c)] = sv * v[static_cast<std::size_t>(c)];
        directions.push_back(base);
        for (int sa : {1, -1}) {
          for (int sb : {1, -1}) {
            Vec d2 = base;
            for (int c = 0; c < 3; ++c)
              d2[static_cast<std::size_t>(c)] +=
                  kNudge * (sa * wa[static_cast<std::size_t>(c)] +
                            sb * wb[static_cast<std::size_t>(c)]);
            directions.push_back(std::move(d2));
          }
        }
      }
    }
  }
  for (int axis = 0; axis < 3; ++axis) {
    for (int s : {1, -1}) {
      Vec v(3, 0.0);
      v[static_cast<std::size_t>(axis)] = s;
      directions.push_back(std::move(v));
    }
  }
  for (const Vec& u : diffs) {
    directions.push_back(u);
    directions.push_back({-u[0], -u[1], -u[2]});
  }

  return depthCountDirections(diffs, directions, equalCount, exec);
}

std::size_t tukeyDepthCount(const Dataset& data, std::span<const double> t,
                            Exec exec) {
  if (data.empty()) throw ParameterError("tukey depth of empty dataset");
  if (t.size() != data.dim()) throw ParameterError("point dimension mismatch");
  switch (data.dim()) {
    case 1:
      return depthCount1d(data, t[0]);
    case 2:
      return depthCount2d(data, t, exec);
    case 3:
      return depthCount3d(data, t, exec);
    default:
      throw ParameterError("tukey depth supports d in {1,2,3}");
  }
}

}  // namespace

double tukeyDepth(const Dataset& data, std::span<const double> t, Exec exec) {
  return static_cast<double>(tukeyDepthCount(data, t, exec)) /
         static_cast<double>(data.size());
}

Vec tukeyMedianGrid(const Dataset& data, double radius, double resolution,
                    Exec exec) {
  if (!(radius > 0.0) || !(resolution > 0.0))
    throw ParameterError("radius and resolution must be positive");
  const std::size_t d = data.dim();
  if (d > 3) throw ParameterError("tukey median supports d in {1,2,3}");

  // Lattice points z*resolution with ||p|| <= radius, lexicographic order.
  const auto maxZ = static_cast<long>(std::floor(radius / resolution));
  std::vector<Vec> points;
  std::vector<long> z(d, -maxZ);
  bool done = false;
  while (!done) {
    Vec p(d);
    for (std::size_t j = 0; j < d; ++j) p[j] = static_cast<double>(z[j]) * resolution;
    if (norm2(p) <= radius) points.push_back(std::move(p));
    done = true;
    std::size_t j = d;
    while (j-- > 0) {
      if (++z[j] <= maxZ) {
        done = false;
        break;
      }
      z[j] = -maxZ;
    }
  }
  if (points.empty()) throw ParameterError("grid resolution exceeds radius");

  const auto m = static_cast<std::int64_t>(points.size());
  std::size_t bestCount = 0;
  std::size_t bestIdx = 0;
  bool haveBest = false;
  auto better = [&](std::size_t count, std::size_t idx) {
    if (!haveBest || count > bestCount) return true;
    if (count < bestCount) return false;
    return lexLess(points[idx], points[bestIdx]);
  };

  if (exec == Exec::Parallel) {
#pragma omp parallel
    {
      std::size_t localCount = 0, localIdx = 0;
      bool localHave = false;
#pragma omp for nowait
      for (std::int64_t i = 0; i < m; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        // Depth itself runs serial here; the grid scan is the parallel axis.
        const std::size_t c = tukeyDepthCount(data, points[idx], Exec::Serial);
        if (!localHave || c > localCount ||
            (c == localCount && lexLess(points[idx], points[localIdx]))) {
          localCount = c;
          localIdx = idx;
          localHave = true;
        }
      }
#pragma omp critical
      {
        if (localHave && better(localCount, localIdx)) {
          bestCount = localCount;
          bestIdx = localIdx;
          haveBest = true;
        }
      }
    }
  } else {
    for (std::int64_t i = 0; i < m; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const std::size_t c = tukeyDepthCount(data, points[idx], Exec::Serial);
      if (better(c, idx)) {
        bestCount = c;
        bestIdx = idx;
        haveBest = true;
      }
    }
  }
  return points[bestIdx];
}

Vec derandomize(const RandomizedEstimator& alg, const Dataset& data,
                double alpha, const std::vector<Vec>& candidateGrid,
                std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw ParameterError("samples must be positive");
  if (candidateGrid.empty()) throw ParameterError("candidate grid is empty");

  std::vector<Vec> draws(samples);
  for (std::size_t i = 0; i < samples; ++i)
    draws[i] = alg(data, deriveSeed(seed, 0, i));

  std::size_t bestCount = 0, bestIdx = 0;
  bool have = false;
  for (std::size_t c = 0; c < candidateGrid.size(); ++c) {
    std::size_t count = 0;
    for (const Vec& x : draws)
      if (dist2(candidateGrid[c], x) <= alpha) ++count;
    if (!have || count > bestCount ||
        (count == bestCount && lexLess(candidateGrid[c], candidateGrid[bestIdx]))) {
      bestCount = count;
      bestIdx = c;
      have = true;
    }
  }
  return candidateGrid[bestIdx];
}

}  // namespace dpkit

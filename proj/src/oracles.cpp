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

#include "dpkit/oracles.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dpkit {

LenOracle LenOracle::bruteForce(Estimator f, std::vector<Vec> replacementGrid,
                                std::int32_t cap) {
  if (!f) throw ParameterError("brute force oracle needs an estimator");
  if (replacementGrid.empty()) throw ParameterError("replacement grid is empty");
  if (cap < 1) throw ParameterError("cap must be at least 1");
  LenOracle o;
  o.kind_ = Kind::BruteForce;
  o.f_ = std::move(f);
  o.replacements_ = std::move(replacementGrid);
  o.cap_ = cap;
  return o;
}

LenOracle LenOracle::medianAnalytic(double projectionRadius) {
  return quantileAnalytic(0.5, projectionRadius);
}

LenOracle LenOracle::quantileAnalytic(double q, double projectionRadius) {
  if (!(q > 0.0 && q <= 1.0)) throw ParameterError("quantile must lie in (0, 1]");
  if (!(projectionRadius > 0.0)) throw ParameterError("radius must be positive");
  LenOracle o;
  o.kind_ = q == 0.5 ? Kind::MedianAnalytic : Kind::QuantileAnalytic;
  o.quantileQ_ = q;
  o.projectionRadius_ = projectionRadius;
  return o;
}

LenOracle LenOracle::sparseMeanAnalytic(int k, double radius) {
  if (k < 1) throw ParameterError("sparsity k must be positive");
  if (!(radius > 0.0)) throw ParameterError("radius must be positive");
  LenOracle o;
  o.kind_ = Kind::SparseMeanAnalytic;
  o.sparseK_ = k;
  o.projectionRadius_ = radius;
  return o;
}

namespace {

double clip(double x, double r) { return std::min(r, std::max(-r, x)); }

// ----- analytic (projected) order statistic ------------------------------

// Sorted 1-d view with the pivot order statistic m (1-based). After k record
// replacements, the reachable pivot values are exactly [x(m-k), x(m+k)]
// (sentinels +-inf beyond the sample), so path lengths, moduli, and bad-set
// distances reduce to index arithmetic. With a projection radius R the
// estimator is clip(x(m), -R, R); a target of exactly +-R only requires
// pushing the pivot past the boundary.
struct SortedPivot {
  std::vector<double> x;  // ascending
  std::size_t m = 1;      // 1-based pivot index
  double radius = std::numeric_limits<double>::infinity();

  SortedPivot(const Dataset& data, double q, double r) : radius(r) {
    if (data.dim() != 1)
      throw ParameterError("analytic order-statistic oracles require d = 1");
    if (data.empty()) throw ParameterError("empty dataset");
    x = data.column(0);
    std::sort(x.begin(), x.end());
    const double raw = std::ceil(q * static_cast<double>(x.size()));
    m = static_cast<std::size_t>(
        std::min<double>(std::max(raw, 1.0), static_cast<double>(x.size())));
  }

  std::size_t n() const { return x.size(); }

  // x(i) with +-inf outside [1, n]; 1-based.
  double orderStat(std::ptrdiff_t i) const {
    if (i < 1) return -std::numeric_limits<double>::infinity();
    if (i > static_cast<std::ptrdiff_t>(n()))
      return std::numeric_limits<double>::infinity();
    return x[static_cast<std::size_t>(i - 1)];
  }

  double estimate() const { return clip(orderStat(static_cast<std::ptrdiff_t>(m)), radius); }

  std::size_t countLess(double t) const {
    return static_cast<std::size_t>(
        std::lower_bound(x.begin(), x.end(), t) - x.begin());
  }
  std::size_t countLessEq(double t) const {
    return static_cast<std::size_t>(
        std::upper_bound(x.begin(), x.end(), t) - x.begin());
  }

  std::int32_t len(double t) const {
    const auto mm = static_cast<std::ptrdiff_t>(m);
    if (t > radius || t < -radius) return kScoreInf;
    if (t == radius && std::isfinite(radius)) {
      // Reach any pivot >= R: x(m+k) >= R.
      const auto c = static_cast<std::ptrdiff_t>(countLess(radius));
      return static_cast<std::int32_t>(std::max<std::ptrdiff_t>(0, c + 1 - mm));
    }
    if (t == -radius && std::isfinite(radius)) {
      const auto c = static_cast<std::ptrdiff_t>(countLessEq(-radius));
      return static_cast<std::int32_t>(std::max<std::ptrdiff_t>(0, mm - c));
    }
    const auto kHigh = std::max<std::ptrdiff_t>(
        0, static_cast<std::ptrdiff_t>(countLess(t)) + 1 - mm);
    const auto kLow = std::max<std::ptrdiff_t>(
        0, mm - static_cast<std::ptrdiff_t>(countLessEq(t)));
    return static_cast<std::int32_t>(std::max(kHigh, kLow));
  }

  std::int32_t smoothLen(double t, double rho) const {
    const double lo = std::max(t - rho, -radius);
    const double hi = std::min(t + rho, radius);
    if (lo > hi) return kScoreInf;
    // len is nondecreasing away from the estimate, so the best witness in
    // the window is the point nearest to it.
    const double s = std::min(hi, std::max(lo, estimate()));
    return len(s);
  }

  double modulus(std::size_t K) const {
    const auto mm = static_cast<std::ptrdiff_t>(m);
    const double c0 = estimate();
    const double hi = clip(orderStat(mm + static_cast<std::ptrdiff_t>(K)), radius);
    const double lo = clip(orderStat(mm - static_cast<std::ptrdiff_t>(K)), radius);
    return std::max(hi - c0, c0 - lo);
  }

  // Largest modulus at q replacements reachable after first corrupting j
  // records. Splitting the j corruptions into a pushes of the far order
  // statistic and b pushes of the pivot realizes spreads
  //   clip(x(m+q+a)) - clip(x(m-b))   and   clip(x(m+b)) - clip(x(m-q-a)),
  // and a counting argument shows no corruption does better.
  double corruptedModulus(std::size_t j, std::size_t q) const {
    const auto mm = static_cast<std::ptrdiff_t>(m);
    const auto qq = static_cast<std::ptrdiff_t>(q);
    double best = 0.0;
    for (std::size_t a = 0; a <= j; ++a) {
      const auto aa = static_cast<std::ptrdiff_t>(a);
      const auto bb = static_cast<std::ptrdiff_t>(j - a);
      const double up = clip(orderStat(mm + qq + aa), radius) -
                        clip(orderStat(mm - bb), radius);
      const double down = clip(orderStat(mm + bb), radius) -
                          clip(orderStat(mm - qq - aa), radius);
      best = std::max(best, std::max(up, down));
    }
    return best;
  }
};

// ----- analytic projected top-k sparse mean ------------------------------

// One record replacement can set the coordinate means to any vector, so any
// k-sparse target inside the ball is one replacement away and everything
// else is unreachable.
struct SparseMeanView {
  Vec y;  // current estimate
  int k;
  double radius;

  SparseMeanView(const Dataset& data, int kk, double r) : k(kk), radius(r) {
    RobustEstimatorSpec spec;
    spec.kind = EstimatorKind::TopKSparseMean;
    spec.sparsity = kk;
    spec.radius = r;
    spec.dim = static_cast<int>(data.dim());
    y = estimate(spec, data);
  }

  // Distance from t to the set of k-sparse points of norm <= radius. The
  // closest point keeps the k largest coordinates of t (dropping smaller
  // coordinates always beats dropping larger ones) and rescales into the
  // ball.
  double distToReachable(std::span<const double> t) const {
    std::vector<double> mags(t.begin(), t.end());
    for (double& v : mags) v = v * v;
    std::sort(mags.begin(), mags.end(), std::greater<>());
    double topSq = 0.0, offSq = 0.0;
    for (std::size_t i = 0; i < mags.size(); ++i) {
      if (i < static_cast<std::size_t>(k))
        topSq += mags[i];
      else
        offSq += mags[i];
    }
    const double excess = std::max(0.0, std::sqrt(topSq) - radius);
    return std::sqrt(offSq + excess * excess);
  }

  std::int32_t len(std::span<const double> t, double quantStep) const {
    bool atSelf;
    if (quantStep > 0.0) {
      atSelf = true;
      for (std::size_t j = 0; j < t.size(); ++j)
        atSelf &= std::llround(t[j] / quantStep) == std::llround(y[j] / quantStep);
    } else {
      atSelf = std::equal(t.begin(), t.end(), y.begin());
    }
    if (atSelf) return 0;
    if (l0Norm(t) <= static_cast<std::size_t>(k) && norm2(t) <= radius) return 1;
    return kScoreInf;
  }

  std::int32_t smoothLen(std::span<const double> t, double rho,
                         double quantStep) const {
    if (rho <= 0.0) return len(t, quantStep);
    if (dist2(t, y) <= rho) return 0;
    if (distToReachable(t) <= rho) return 1;
    return kScoreInf;
  }
};

// ----- brute force --------------------------------------------------------

// Calls visit(work) for every dataset obtained from `orig` by replacing
// exactly k records (indices chosen ascending) with replacement grid values.
// `work` is modified in place and restored afterwards.
template <typename Visit>
void forEachKReplacement(Dataset& work, const Dataset& orig,
                         const std::vector<Vec>& grid, int k,
                         std::size_t firstIdx, const Visit& visit) {
  if (k == 0) {
    visit(work);
    return;
  }
  const std::size_t n = orig.size();
  if (firstIdx + static_cast<std::size_t>(k) > n) return;
  for (std::size_t i = firstIdx; i + static_cast<std::size_t>(k) <= n; ++i) {
    for (const Vec& v : grid) {
      work.setRecord(i, v);
      forEachKReplacement(work, orig, grid, k - 1, i + 1, visit);
    }
    work.setRecord(i, orig.record(i));
  }
}

std::vector<std::int32_t> bruteForceTable(const Estimator& f, const Dataset& data,
                                          const LatticeGrid& grid,
                                          const std::vector<Vec>& replacements,
                                          std::int32_t cap) {
  std::vector<std::int32_t> table(grid.size(), cap);
  auto mark = [&](const Dataset& s, std::int32_t k) {
    const auto idx = grid.indexOfPoint(f(s));
    if (idx && table[*idx] > k) table[*idx] = k;
  };
  mark(data, 0);
  Dataset work = data;
  for (std::int32_t k = 1; k < cap; ++k) {
    const std::int32_t kk = k;
    forEachKReplacement(work, data, replacements, k, 0,
                        [&](const Dataset& s) { mark(s, kk); });
  }
  return table;
}

}  // namespace

std::int32_t LenOracle::len(const Dataset& data, std::span<const double> t,
                            double quantStep) const {
  switch (kind_) {
    case Kind::MedianAnalytic:
    case Kind::QuantileAnalytic: {
      if (t.size() != 1) throw ParameterError("analytic oracle target must be 1-d");
      return SortedPivot(data, quantileQ_, projectionRadius_).len(t[0]);
    }
    case Kind::SparseMeanAnalytic:
      return SparseMeanView(data, sparseK_, projectionRadius_).len(t, quantStep);
    case Kind::BruteForce: {
      if (!(quantStep > 0.0))
        throw ParameterError("brute force len requires a quantization step");
      std::vector<std::int32_t> target(t.size());
      for (std::size_t j = 0; j < t.size(); ++j)
        target[j] = static_cast<std::int32_t>(std::llround(t[j] / quantStep));
      auto sameCell = [&](const Vec& y) {
        for (std::size_t j = 0; j < y.size(); ++j)
          if (static_cast<std::int32_t>(std::llround(y[j] / quantStep)) != target[j])
            return false;
        return true;
      };
      if (sameCell(f_(data))) return 0;
      Dataset work = data;
      for (std::int32_t k = 1; k < cap_; ++k) {
        bool found = false;
        forEachKReplacement(work, data, replacements_, k, 0,
                            [&](const Dataset& s) {
                              if (!found && sameCell(f_(s))) found = true;
                            });
        if (found) return k;
      }
      return cap_;
    }
  }
  throw ParameterError("unknown oracle kind");
}

std::int32_t LenOracle::smoothLen(const Dataset& data, std::span<const double> t,
                                  double rho, std::optional<int> sparsity,
                                  double quantStep) const {
  if (rho < 0.0) throw ParameterError("rho must be nonnegative");
  if (sparsity && l0Norm(t) > static_cast<std::size_t>(*sparsity))
    return kScoreInf;
  switch (kind_) {
    case Kind::MedianAnalytic:
    case Kind::QuantileAnalytic: {
      if (t.size() != 1) throw ParameterError("analytic oracle target must be 1-d");
      return SortedPivot(data, quantileQ_, projectionRadius_).smoothLen(t[0], rho);
    }
    case Kind::SparseMeanAnalytic:
      return SparseMeanView(data, sparseK_, projectionRadius_)
          .smoothLen(t, rho, quantStep);
    case Kind::BruteForce: {
      if (rho == 0.0) return len(data, t, quantStep);
      if (!(quantStep > 0.0))
        throw ParameterError("brute force smoothing requires a quantization step");
      // Minimum of len over the rho-covering subgrid around t.
      const auto offsets = latticeOffsets(static_cast<int>(t.size()), quantStep, rho);
      std::int32_t best = kScoreInf;
      Vec s(t.size());
      for (const auto& off : offsets) {
        for (std::size_t j = 0; j < t.size(); ++j)
          s[j] = (std::llround(t[j] / quantStep) + off[j]) * quantStep;
        best = std::min(best, len(data, s, quantStep));
      }
      return best;
    }
  }
  throw ParameterError("unknown oracle kind");
}

std::vector<std::int32_t> LenOracle::scoreTable(const Dataset& data,
                                                const LatticeGrid& grid,
                                                double rho, Exec exec) const {
  if (rho < 0.0) throw ParameterError("rho must be nonnegative");
  const auto cells = static_cast<std::int64_t>(grid.size());
  std::vector<std::int32_t> table(grid.size(), kScoreInf);

  switch (kind_) {
    case Kind::MedianAnalytic:
    case Kind::QuantileAnalytic: {
      if (grid.dim() != 1) throw ParameterError("analytic oracle grid must be 1-d");
      const SortedPivot view(data, quantileQ_, projectionRadius_);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
      for (std::int64_t i = 0; i < cells; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        table[idx] = view.smoothLen(grid.point(idx)[0], rho);
      }
      return table;
    }
    case Kind::SparseMeanAnalytic: {
      const SparseMeanView view(data, sparseK_, projectionRadius_);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
      for (std::int64_t i = 0; i < cells; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const Vec p = grid.point(idx);
        table[idx] = view.smoothLen(p, rho, grid.step());
      }
      return table;
    }
    case Kind::BruteForce: {
      const auto plain = bruteForceTable(f_, data, grid, replacements_, cap_);
      if (rho == 0.0) return plain;
      const auto offsets = latticeOffsets(grid.dim(), grid.step(), rho);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
      for (std::int64_t i = 0; i < cells; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const auto base = grid.cell(idx);
        std::int32_t best = kScoreInf;
        std::vector<std::int32_t> z(base.begin(), base.end());
        for (const auto& off : offsets) {
          for (std::size_t j = 0; j < z.size(); ++j) z[j] = base[j] + off[j];
          const auto nb = grid.indexOfCell(z);
          if (nb) best = std::min(best, plain[*nb]);
        }
        table[idx] = best;
      }
      return table;
    }
  }
  throw ParameterError("unknown oracle kind");
}

double modulusBruteForce(const Estimator& f, const Dataset& data, std::size_t K,
                         const std::vector<Vec>& replacementGrid) {
  if (K > data.size()) throw ParameterError("K exceeds dataset size");
  if (replacementGrid.empty()) throw ParameterError("replacement grid is empty");
  const Vec base = f(data);
  double worst = 0.0;
  Dataset work = data;
  for (std::size_t k = 1; k <= K; ++k) {
    forEachKReplacement(work, data, replacementGrid, static_cast<int>(k), 0,
                        [&](const Dataset& s) {
                          worst = std::max(worst, dist2(f(s), base));
                        });
  }
  return worst;
}

double modulusProjectedMedian(const Dataset& data, std::size_t K, double radius) {
  if (K > data.size()) throw ParameterError("K exceeds dataset size");
  return SortedPivot(data, 0.5, radius).modulus(K);
}

std::optional<std::size_t> distToBadBruteForce(const Estimator& f,
                                               const Dataset& data,
                                               std::size_t K, double B,
                                               const std::vector<Vec>& replacementGrid) {
  const std::size_t n = data.size();
  const std::size_t q = std::min(K + 1, n);
  if (modulusBruteForce(f, data, q, replacementGrid) > B) return 0;
  Dataset work = data;
  for (std::size_t j = 1; j <= n; ++j) {
    bool hit = false;
    forEachKReplacement(work, data, replacementGrid, static_cast<int>(j), 0,
                        [&](const Dataset& s) {
                          if (!hit && modulusBruteForce(f, s, q, replacementGrid) > B)
                            hit = true;
                        });
    if (hit) return j;
  }
  return std::nullopt;
}

std::optional<std::size_t> distToBadProjectedMedian(const Dataset& data,
                                                    std::size_t K, double B,
                                                    double radius) {
  // The modulus never exceeds the output diameter, so the bad set may be
  // empty outright.
  if (2.0 * radius <= B) return std::nullopt;
  const SortedPivot view(data, 0.5, radius);
  const std::size_t q = std::min(K + 1, data.size());
  for (std::size_t j = 0; j <= data.size(); ++j) {
    if (view.corruptedModulus(j, q) > B) return j;
  }
  return std::nullopt;
}

}  // namespace dpkit

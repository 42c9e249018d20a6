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

#include "dpkit/contamination.hpp"

#include <algorithm>
#include <numeric>

#include "dpkit/rng.hpp"

namespace dpkit {

Adversary Adversary::replaceWithConstant(Vec constant) {
  Adversary a;
  a.kind = AdversaryKind::ReplaceWithConstant;
  a.constant = std::move(constant);
  a.name = "replace-with-constant";
  return a;
}

Adversary Adversary::shiftToExtreme(Vec direction, double magnitude) {
  const double n = norm2(direction);
  if (!(n > 0.0)) throw ParameterError("direction must be nonzero");
  for (double& x : direction) x /= n;
  Adversary a;
  a.kind = AdversaryKind::ShiftToExtreme;
  a.direction = std::move(direction);
  a.magnitude = magnitude;
  a.name = "shift-to-extreme";
  return a;
}

Adversary Adversary::greedyWorstCase(Estimator target, double radius) {
  if (!target) throw ParameterError("greedy adversary needs a target estimator");
  Adversary a;
  a.kind = AdversaryKind::GreedyWorstCase;
  a.target = std::move(target);
  a.radius = radius;
  a.name = "greedy-worst-case";
  return a;
}

namespace {

// Seeded permutation of record indices (Fisher-Yates).
std::vector<std::size_t> shuffledIndices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  SplitMix64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.nextU64() % i;
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

bool recordEquals(const Dataset& data, std::size_t i, std::span<const double> v) {
  const auto r = data.record(i);
  return std::equal(r.begin(), r.end(), v.begin());
}

Dataset replaceValue(const Dataset& data, std::size_t budget, const Vec& value,
                     std::uint64_t seed) {
  Dataset out = data;
  // Prefer records that differ from the replacement value so the Hamming
  // distance comes out exact.
  const auto order = shuffledIndices(data.size(), seed);
  std::size_t replaced = 0;
  for (std::size_t i : order) {
    if (replaced == budget) break;
    if (!recordEquals(data, i, value)) {
      out.setRecord(i, value);
      ++replaced;
    }
  }
  for (std::size_t i : order) {
    if (replaced == budget) break;
    if (recordEquals(out, i, value)) {
      out.setRecord(i, value);
      ++replaced;
    }
  }
  return out;
}

// Candidate replacement values for the greedy search: +-10R along each axis,
// +-10R on the diagonal, and the current records.
std::vector<Vec> greedyCandidates(const Dataset& data, double radius) {
  const std::size_t d = data.dim();
  std::vector<Vec> cands;
  const double far = 10.0 * radius;
  for (std::size_t j = 0; j < d; ++j) {
    for (double s : {-1.0, 1.0}) {
      Vec v(d, 0.0);
      v[j] = s * far;
      cands.push_back(std::move(v));
    }
  }
  if (d > 1) {
    const double c = far / std::sqrt(static_cast<double>(d));
    cands.emplace_back(d, c);
    cands.emplace_back(d, -c);
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto r = data.record(i);
    cands.emplace_back(r.begin(), r.end());
  }
  return cands;
}

Dataset greedyCorrupt(const Dataset& data, std::size_t budget, const Adversary& adv) {
  Dataset out = data;
  const Vec baseline = adv.target(data);
  const auto cands = greedyCandidates(data, adv.radius);
  std::vector<bool> used(data.size(), false);
  double bestDisp = 0.0;

  for (std::size_t step = 0; step < budget; ++step) {
    // One scan in fixed (index, candidate) order; first strict improvement
    // of the maximum wins, which keeps the adversary deterministic.
    double stepBest = bestDisp;
    std::size_t stepIdx = 0;
    const Vec* stepValue = nullptr;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (used[i]) continue;
      const Vec saved(out.record(i).begin(), out.record(i).end());
      for (const Vec& v : cands) {
        out.setRecord(i, v);
        const double disp = dist2(adv.target(out), baseline);
        if (disp > stepBest) {
          stepBest = disp;
          stepIdx = i;
          stepValue = &v;
        }
      }
      out.setRecord(i, saved);
    }
    if (stepValue == nullptr) break;  // no replacement helps; stop early
    out.setRecord(stepIdx, *stepValue);
    used[stepIdx] = true;
    bestDisp = stepBest;
  }
  return out;
}

}  // namespace

Dataset corrupt(const Dataset& data, std::size_t budget, const Adversary& adv,
                std::uint64_t seed) {
  if (budget > data.size())
    throw ParameterError("corruption budget exceeds dataset size");
  if (budget == 0) return data;

  switch (adv.kind) {
    case AdversaryKind::ReplaceWithConstant: {
      if (adv.constant.size() != data.dim())
        throw ParameterError("constant dimension mismatch");
      return replaceValue(data, budget, adv.constant, seed);
    }
    case AdversaryKind::ShiftToExtreme: {
      if (adv.direction.size() != data.dim())
        throw ParameterError("direction dimension mismatch");
      Vec v(data.dim());
      for (std::size_t j = 0; j < data.dim(); ++j)
        v[j] = adv.direction[j] * adv.magnitude;
      return replaceValue(data, budget, v, seed);
    }
    case AdversaryKind::GreedyWorstCase:
      return greedyCorrupt(data, budget, adv);
  }
  throw ParameterError("unknown adversary kind");
}

}  // namespace dpkit

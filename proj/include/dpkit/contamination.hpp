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

#ifndef DPKIT_CONTAMINATION_HPP
#define DPKIT_CONTAMINATION_HPP

#include <cstdint>
#include <string>

#include "dpkit/dataset.hpp"
#include "dpkit/estimators.hpp"

namespace dpkit {

enum class AdversaryKind { ReplaceWithConstant, ShiftToExtreme, GreedyWorstCase };

// Strong-contamination adversaries: each replaces up to `budget` records
// outright. The greedy adversary is a heuristic lower bound on worst-case
// damage, searching replacement values over +-10R per axis and the current
// record set; exact worst cases live in the brute-force oracles only.
struct Adversary {
  static Adversary replaceWithConstant(Vec constant);
  static Adversary shiftToExtreme(Vec direction, double magnitude = 1e6);
  static Adversary greedyWorstCase(Estimator target, double radius);

  AdversaryKind kind = AdversaryKind::ReplaceWithConstant;
  Vec constant;      // ReplaceWithConstant
  Vec direction;     // ShiftToExtreme, normalized at construction
  double magnitude = 1e6;
  Estimator target;  // GreedyWorstCase
  double radius = 1.0;
  std::string name;  // for reports
};

// Returns a dataset at Hamming distance exactly min(budget, n) from the
// input (the greedy adversary may use fewer replacements when none helps).
// Which records are replaced is a deterministic function of the seed.
Dataset corrupt(const Dataset& data, std::size_t budget, const Adversary& adv,
                std::uint64_t seed);

}  // namespace dpkit

#endif  // DPKIT_CONTAMINATION_HPP

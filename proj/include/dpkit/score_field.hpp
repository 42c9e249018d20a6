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

#ifndef DPKIT_SCORE_FIELD_HPP
#define DPKIT_SCORE_FIELD_HPP

#include <string>

#include "dpkit/oracles.hpp"

namespace dpkit {

// A finite grid over the output ball with one inverse-sensitivity score per
// cell: the exponential mechanism's substrate. Cells have uniform volume, so
// the continuous density over the grid reduces to per-cell weights.
struct ScoreField {
  LatticeGrid grid;
  std::vector<std::int32_t> scores;  // kScoreInf = zero weight
  double rho = 0.0;
  std::optional<std::int32_t> cap;

  double cellVolume() const;
  std::size_t finiteCells() const;
};

// Smoothed scores for every grid cell. Exec::Parallel distributes cells over
// OpenMP threads; Exec::Serial is the reference loop. Both return identical
// fields.
ScoreField buildScoreField(const LenOracle& oracle, const Dataset& data,
                           const LatticeGrid& grid, double rho,
                           Exec exec = Exec::Parallel);

// Score transforms. Each preserves sensitivity 1 of the base score.
ScoreField withCap(ScoreField field, std::int32_t cap);        // min(score, cap)
ScoreField withTruncation(ScoreField field, std::int32_t K);   // score > K -> inf
ScoreField withSparsityGate(ScoreField field, int k);          // ||t||_0 > k -> inf

// CSV with columns t_1..t_d,score (header row included); infinite scores are
// written as the string "inf".
void writeScoreFieldCsv(const ScoreField& field, const std::string& path);

}  // namespace dpkit

#endif  // DPKIT_SCORE_FIELD_HPP

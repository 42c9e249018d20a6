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

#include "dpkit/score_field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace dpkit {

double ScoreField::cellVolume() const {
  return std::pow(grid.step(), grid.dim());
}

std::size_t ScoreField::finiteCells() const {
  std::size_t c = 0;
  for (std::int32_t s : scores)
    if (s != kScoreInf) ++c;
  return c;
}

ScoreField buildScoreField(const LenOracle& oracle, const Dataset& data,
                           const LatticeGrid& grid, double rho, Exec exec) {
  ScoreField field;
  field.grid = grid;
  field.rho = rho;
  if (oracle.kind() == LenOracle::Kind::BruteForce) field.cap = oracle.cap();
  field.scores = oracle.scoreTable(data, grid, rho, exec);
  return field;
}

ScoreField withCap(ScoreField field, std::int32_t cap) {
  if (cap < 1) throw ParameterError("cap must be at least 1");
  for (std::int32_t& s : field.scores)
    if (s != kScoreInf) s = std::min(s, cap);
    else s = cap;
  field.cap = cap;
  return field;
}

ScoreField withTruncation(ScoreField field, std::int32_t K) {
  if (K < 1) throw ParameterError("truncation threshold must be at least 1");
  for (std::int32_t& s : field.scores)
    if (s > K) s = kScoreInf;
  return field;
}

ScoreField withSparsityGate(ScoreField field, int k) {
  if (k < 0) throw ParameterError("sparsity must be nonnegative");
  for (std::size_t i = 0; i < field.grid.size(); ++i) {
    const auto cell = field.grid.cell(i);
    std::size_t nz = 0;
    for (std::int32_t z : cell)
      if (z != 0) ++nz;
    if (nz > static_cast<std::size_t>(k)) field.scores[i] = kScoreInf;
  }
  return field;
}

void writeScoreFieldCsv(const ScoreField& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open output file: " + path);
  for (int j = 0; j < field.grid.dim(); ++j) out << "t_" << (j + 1) << ',';
  out << "score\n";
  char buf[64];
  for (std::size_t i = 0; i < field.grid.size(); ++i) {
    const Vec p = field.grid.point(i);
    for (double v : p) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << buf << ',';
    }
    if (field.scores[i] == kScoreInf)
      out << "inf\n";
    else
      out << field.scores[i] << '\n';
  }
}

}  // namespace dpkit

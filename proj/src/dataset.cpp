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

#include "dpkit/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dpkit {

Dataset Dataset::fromValues(std::vector<double> values) {
  Dataset d;
  d.n_ = values.size();
  d.dim_ = 1;
  d.data_ = std::move(values);
  return d;
}

Dataset Dataset::fromRows(const std::vector<Vec>& rows) {
  if (rows.empty()) return Dataset{};
  Dataset d(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d.dim_)
      throw ParameterError("all records must have identical dimension");
    std::copy(rows[i].begin(), rows[i].end(), d.data_.begin() + i * d.dim_);
  }
  return d;
}

void Dataset::setRecord(std::size_t i, std::span<const double> value) {
  if (value.size() != dim_) throw ParameterError("record dimension mismatch");
  std::copy(value.begin(), value.end(), data_.begin() + i * dim_);
}

std::vector<double> Dataset::column(std::size_t j) const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = data_[i * dim_ + j];
  return out;
}

std::size_t hammingDistance(const Dataset& a, const Dataset& b) {
  if (a.size() != b.size() || a.dim() != b.dim())
    throw ParameterError("hamming distance requires same-shape datasets");
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ra = a.record(i);
    const auto rb = b.record(i);
    if (!std::equal(ra.begin(), ra.end(), rb.begin())) ++count;
  }
  return count;
}

Dataset readCsv(const std::string& path, bool skipHeader) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open dataset file: " + path);
  std::vector<Vec> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first && skipHeader) {
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    Vec row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str())
        throw ParameterError("bad numeric cell in " + path + ": '" + cell + "'");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParameterError("ragged rows in " + path);
    rows.push_back(std::move(row));
  }
  return Dataset::fromRows(rows);
}

void writeCsv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open output file: " + path);
  char buf[64];
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data.dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.at(i, j));
      out << buf;
      if (j + 1 < data.dim()) out << ',';
    }
    out << '\n';
  }
}

}  // namespace dpkit

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

#ifndef DPKIT_DATASET_HPP
#define DPKIT_DATASET_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dpkit/errors.hpp"
#include "dpkit/vec.hpp"

namespace dpkit {

// An ordered sequence of n records, each a d-vector of reals, stored
// row-major. The neighbor metric between same-shape datasets is the Hamming
// distance over record positions.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t n, std::size_t dim)
      : n_(n), dim_(dim), data_(n * dim, 0.0) {
    if (dim == 0) throw ParameterError("record dimension must be positive");
  }

  // One-dimensional datasets from a flat value list.
  static Dataset fromValues(std::vector<double> values);
  static Dataset fromRows(const std::vector<Vec>& rows);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return n_ == 0; }

  std::span<const double> record(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<double> record(std::size_t i) {
    return {data_.data() + i * dim_, dim_};
  }
  double at(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  double& at(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }

  void setRecord(std::size_t i, std::span<const double> value);
  std::vector<double> column(std::size_t j) const;

  bool operator==(const Dataset& other) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 1;
  std::vector<double> data_;
};

// Number of record positions where the two datasets differ. The datasets must
// have the same length and dimension.
std::size_t hammingDistance(const Dataset& a, const Dataset& b);

// CSV with one record per row and d float columns. skipHeader drops the first
// line on read. Values are written with 17 significant digits, so write/read
// round-trips are bit-stable.
Dataset readCsv(const std::string& path, bool skipHeader = false);
void writeCsv(const Dataset& data, const std::string& path);

}  // namespace dpkit

#endif  // DPKIT_DATASET_HPP

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

#ifndef DPKIT_LATTICE_HPP
#define DPKIT_LATTICE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dpkit/errors.hpp"
#include "dpkit/vec.hpp"

namespace dpkit {

// A finite set of axis-aligned lattice cells (integer coordinates times a
// step width) in a fixed lexicographic order. Mechanism supports and score
// fields live on these grids; the enumerated cell set depends only on the
// grid parameters, never on data. Copies share the immutable cell storage,
// so passing grids around stays cheap even when they hold many cells.
class LatticeGrid {
 public:
  LatticeGrid() = default;
  LatticeGrid(int dim, double step, std::vector<std::int32_t> cells);

  int dim() const { return data_ ? data_->dim : 0; }
  double step() const { return data_ ? data_->step : 1.0; }
  std::size_t size() const {
    return data_ ? data_->cells.size() / static_cast<std::size_t>(data_->dim) : 0;
  }

  std::span<const std::int32_t> cell(std::size_t idx) const {
    const auto d = static_cast<std::size_t>(data_->dim);
    return {data_->cells.data() + idx * d, d};
  }
  Vec point(std::size_t idx) const;

  // Integer cell containing p (round-to-nearest per coordinate).
  std::vector<std::int32_t> quantize(std::span<const double> p) const;
  std::optional<std::size_t> indexOfCell(std::span<const std::int32_t> z) const;
  std::optional<std::size_t> indexOfPoint(std::span<const double> p) const;

 private:
  struct Data {
    int dim = 0;
    double step = 1.0;
    std::vector<std::int32_t> cells;  // size() * dim, lexicographically sorted
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;
  };
  std::shared_ptr<const Data> data_;
};

// All cells with ||point|| <= coverRadius. Size grows as (coverRadius/step)^dim.
LatticeGrid ballLattice(int dim, double step, double coverRadius);

// Cells with at most k nonzero coordinates and ||point|| <= coverRadius.
LatticeGrid sparseBallLattice(int dim, double step, double coverRadius, int k);

// The k-sparse cells of ball(radius + rho) together with every cell within
// lattice distance rho of one: the support universe for smoothed scores of
// k-sparse estimators in dimensions too large for a dense grid (smoothing
// witnesses are grid points, per the rho-covering-subgrid convention).
LatticeGrid sparseNeighborhoodLattice(int dim, double step, double radius,
                                      int k, double rho);

// Integer offsets z with ||z*step|| <= rho, used for smoothing passes.
std::vector<std::vector<std::int32_t>> latticeOffsets(int dim, double step,
                                                      double rho);

}  // namespace dpkit

#endif  // DPKIT_LATTICE_HPP

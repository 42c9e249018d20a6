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

#include "dpkit/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace dpkit {

namespace {

std::uint64_t hashCell(std::span<const std::int32_t> z) {
  // FNV-1a over the coordinate words.
  std::uint64_t h = 1469598103934665603ULL;
  for (std::int32_t v : z) {
    auto u = static_cast<std::uint32_t>(v);
    for (int b = 0; b < 4; ++b) {
      h ^= (u >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace

LatticeGrid::LatticeGrid(int dim, double step, std::vector<std::int32_t> cells) {
  if (dim < 1) throw ParameterError("lattice dimension must be positive");
  if (!(step > 0.0)) throw ParameterError("lattice step must be positive");
  if (cells.size() % static_cast<std::size_t>(dim) != 0)
    throw ParameterError("ragged lattice cell array");
  auto data = std::make_shared<Data>();
  data->dim = dim;
  data->step = step;
  data->cells = std::move(cells);
  const std::size_t n = data->cells.size() / static_cast<std::size_t>(dim);
  data->index.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::span<const std::int32_t> c{
        data->cells.data() + i * static_cast<std::size_t>(dim),
        static_cast<std::size_t>(dim)};
    data->index[hashCell(c)].push_back(i);
  }
  data_ = std::move(data);
}

Vec LatticeGrid::point(std::size_t idx) const {
  const auto z = cell(idx);
  Vec p(z.size());
  for (std::size_t j = 0; j < p.size(); ++j)
    p[j] = static_cast<double>(z[j]) * data_->step;
  return p;
}

std::vector<std::int32_t> LatticeGrid::quantize(std::span<const double> p) const {
  std::vector<std::int32_t> z(p.size());
  for (std::size_t j = 0; j < p.size(); ++j)
    z[j] = static_cast<std::int32_t>(std::llround(p[j] / data_->step));
  return z;
}

std::optional<std::size_t> LatticeGrid::indexOfCell(
    std::span<const std::int32_t> z) const {
  if (!data_) return std::nullopt;
  const auto it = data_->index.find(hashCell(z));
  if (it == data_->index.end()) return std::nullopt;
  for (std::size_t idx : it->second) {
    const auto c = cell(idx);
    if (std::equal(c.begin(), c.end(), z.begin())) return idx;
  }
  return std::nullopt;
}

std::optional<std::size_t> LatticeGrid::indexOfPoint(
    std::span<const double> p) const {
  if (!data_ || static_cast<int>(p.size()) != data_->dim) return std::nullopt;
  const auto z = quantize(p);
  return indexOfCell(z);
}

namespace {

// Appends every z with ||z*step|| <= radius in lexicographic order. The
// recursion prunes on the remaining squared budget, so the cost tracks the
// output size rather than the bounding box (which matters in high dim).
void enumerateBallRec(int dim, double step, double radius,
                      std::vector<std::int32_t>& z, int level, double usedSq,
                      std::vector<std::int32_t>& out) {
  if (level == dim) {
    out.insert(out.end(), z.begin(), z.end());
    return;
  }
  const double budget = radius * radius - usedSq;
  if (budget < 0.0) return;
  const auto maxZ = static_cast<std::int32_t>(std::floor(std::sqrt(budget) / step));
  for (std::int32_t v = -maxZ; v <= maxZ; ++v) {
    const double x = static_cast<double>(v) * step;
    z[static_cast<std::size_t>(level)] = v;
    enumerateBallRec(dim, step, radius, z, level + 1, usedSq + x * x, out);
  }
  z[static_cast<std::size_t>(level)] = 0;
}

std::vector<std::int32_t> enumerateBall(int dim, double step, double radius) {
  std::vector<std::int32_t> z(static_cast<std::size_t>(dim), 0);
  std::vector<std::int32_t> out;
  enumerateBallRec(dim, step, radius, z, 0, 0.0, out);
  return out;
}

std::vector<std::vector<std::int32_t>> sparsePoints(int dim, double step,
                                                    double coverRadius, int k) {
  std::vector<std::vector<std::int32_t>> points;
  points.push_back(std::vector<std::int32_t>(static_cast<std::size_t>(dim), 0));
  const auto maxZ = static_cast<std::int32_t>(std::floor(coverRadius / step));

  auto emitSupport = [&](const std::vector<int>& sup) {
    const auto m = sup.size();
    std::vector<std::int32_t> v(m, -maxZ);
    bool done = m == 0;
    while (!done) {
      bool allNonzero = true;
      for (std::int32_t x : v) allNonzero &= (x != 0);
      if (allNonzero) {
        double s = 0.0;
        for (std::int32_t x : v) {
          const double y = static_cast<double>(x) * step;
          s += y * y;
        }
        if (std::sqrt(s) <= coverRadius) {
          std::vector<std::int32_t> z(static_cast<std::size_t>(dim), 0);
          for (std::size_t i = 0; i < m; ++i)
            z[static_cast<std::size_t>(sup[i])] = v[i];
          points.push_back(std::move(z));
        }
      }
      done = true;
      std::size_t j = m;
      while (j-- > 0) {
        if (++v[j] <= maxZ) {
          done = false;
          break;
        }
        v[j] = -maxZ;
      }
    }
  };

  std::vector<int> sup;
  auto rec = [&](auto&& self, int start, int left) -> void {
    if (left == 0) {
      emitSupport(sup);
      return;
    }
    for (int j = start; j <= dim - left; ++j) {
      sup.push_back(j);
      self(self, j + 1, left - 1);
      sup.pop_back();
    }
  };
  for (int m = 1; m <= k; ++m) rec(rec, 0, m);
  return points;
}

}  // namespace

LatticeGrid ballLattice(int dim, double step, double coverRadius) {
  if (!(coverRadius > 0.0)) throw ParameterError("cover radius must be positive");
  return LatticeGrid(dim, step, enumerateBall(dim, step, coverRadius));
}

LatticeGrid sparseBallLattice(int dim, double step, double coverRadius, int k) {
  if (k < 0) throw ParameterError("sparsity must be nonnegative");
  if (k >= dim) return ballLattice(dim, step, coverRadius);
  auto points = sparsePoints(dim, step, coverRadius, k);
  std::sort(points.begin(), points.end());
  std::vector<std::int32_t> cells;
  cells.reserve(points.size() * static_cast<std::size_t>(dim));
  for (const auto& z : points) cells.insert(cells.end(), z.begin(), z.end());
  return LatticeGrid(dim, step, std::move(cells));
}

LatticeGrid sparseNeighborhoodLattice(int dim, double step, double radius,
                                      int k, double rho) {
  const auto skeleton = sparsePoints(dim, step, radius + rho, k);
  const auto offsets = latticeOffsets(dim, step, rho + 1e-12);

  std::vector<std::vector<std::int32_t>> points;
  points.reserve(skeleton.size() * offsets.size());
  for (const auto& base : skeleton) {
    for (const auto& off : offsets) {
      std::vector<std::int32_t> z = base;
      for (std::size_t j = 0; j < z.size(); ++j) z[j] += off[j];
      points.push_back(std::move(z));
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<std::int32_t> cells;
  cells.reserve(points.size() * static_cast<std::size_t>(dim));
  for (const auto& z : points) cells.insert(cells.end(), z.begin(), z.end());
  return LatticeGrid(dim, step, std::move(cells));
}

std::vector<std::vector<std::int32_t>> latticeOffsets(int dim, double step,
                                                      double rho) {
  if (!(rho >= 0.0)) throw ParameterError("rho must be nonnegative");
  const std::vector<std::int32_t> flat = enumerateBall(dim, step, rho);
  std::vector<std::vector<std::int32_t>> out;
  const auto d = static_cast<std::size_t>(dim);
  for (std::size_t i = 0; i < flat.size(); i += d)
    out.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i),
                     flat.begin() + static_cast<std::ptrdiff_t>(i + d));
  return out;
}

}  // namespace dpkit

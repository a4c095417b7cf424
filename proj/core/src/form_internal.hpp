#pragma once

// Private assembly helpers shared by the singular-integral and the
// symbol-quadrature routes.  Not installed.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "loglap/grid.hpp"
#include "loglap/quadrature.hpp"

namespace loglap::detail {

// Unique translation classes of distinct cell pairs.  The kernels are
// radial and the cells congruent cubes, so a pair's integral depends only
// on the unordered absolute index offset.
struct OffsetTable {
  std::vector<std::array<int, 2>> keys;  // canonical (max, min) when realizable
  std::vector<int> key_of;               // flat map (|di|, |dj|) -> keys index

  explicit OffsetTable(const Grid& g) {
    const int nx = g.cells[0], ny = g.cells[1];
    key_of.assign(static_cast<std::size_t>(nx) * ny, -1);
    for (int b = 0; b < ny; ++b)
      for (int a = 0; a < nx; ++a) {
        if (a == 0 && b == 0) continue;
        const int lo = std::min(a, b), hi = std::max(a, b);
        const bool canonizable = hi < nx && lo < ny;
        const int ca = canonizable ? hi : a;
        const int cb = canonizable ? lo : b;
        const int flat_canon = ca + nx * cb;
        if (key_of[flat_canon] == -1) {
          key_of[flat_canon] = static_cast<int>(keys.size());
          keys.push_back({ca, cb});
        }
        key_of[a + nx * b] = key_of[flat_canon];
      }
  }

  int lookup(int di, int dj, const Grid& g) const {
    return key_of[std::abs(di) + g.cells[0] * std::abs(dj)];
  }
};

// Canonical geometry for an offset class: cell A at the origin, B displaced.
inline std::pair<BoxN, BoxN> offset_boxes(const Grid& g,
                                          std::array<int, 2> key) {
  const double h = g.h;
  BoxN a{g.dim, {0.0, 0.0}, {h, g.dim == 2 ? h : 0.0}};
  BoxN b{g.dim,
         {key[0] * h, g.dim == 2 ? key[1] * h : 0.0},
         {(key[0] + 1) * h, g.dim == 2 ? (key[1] + 1) * h : 0.0}};
  return {a, b};
}

// Fill the full symmetric matrix from per-offset values and a constant
// diagonal (all cells are congruent).
inline Eigen::MatrixXd fill_by_offset(const Grid& g, const OffsetTable& table,
                                      const std::vector<double>& value,
                                      double diagonal) {
  const int n = g.num_cells();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto ci = g.coords(i);
    m(i, i) = diagonal;
    for (int j = i + 1; j < n; ++j) {
      const auto cj = g.coords(j);
      const double v = value[table.lookup(ci[0] - cj[0], ci[1] - cj[1], g)];
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

inline void check_finite(const Eigen::MatrixXd& m, const std::string& what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j)))
        throw std::runtime_error(
            what + ": quadrature produced a non-finite entry at cell pair (" +
            std::to_string(i) + ", " + std::to_string(j) + ")");
}

}  // namespace loglap::detail

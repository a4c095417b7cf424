#ifndef LOGLAP_GRID_HPP
#define LOGLAP_GRID_HPP

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace loglap {

/// Uniform cubic grid of cell indicators on a box, dimension 1 or 2.
///
/// Cells are ordered lexicographically by axis: index = ix + nx * iy.
/// The mesh width h is equal along every axis and must satisfy h < 1/2 so
/// that no cell straddles its own unit-ball cutoff.
struct Grid {
  int dim = 1;
  std::array<double, 2> lo{{0.0, 0.0}};
  std::array<double, 2> hi{{0.0, 0.0}};
  std::array<int, 2> cells{{0, 1}};  ///< cells per axis; cells[1] == 1 in 1D
  double h = 0.0;

  int num_cells() const { return cells[0] * cells[1]; }

  int index(int ix, int iy = 0) const { return ix + cells[0] * iy; }
  std::array<int, 2> coords(int idx) const {
    return {idx % cells[0], idx / cells[0]};
  }

  std::array<double, 2> center(int idx) const {
    const auto c = coords(idx);
    return {lo[0] + (c[0] + 0.5) * h,
            dim == 2 ? lo[1] + (c[1] + 0.5) * h : 0.0};
  }
  std::array<double, 2> cell_lo(int idx) const {
    const auto c = coords(idx);
    return {lo[0] + c[0] * h, dim == 2 ? lo[1] + c[1] * h : 0.0};
  }

  /// Hash of the defining data (dim, box, cell counts); stable across runs.
  std::string hash() const;
};

/// Build a grid; rejects h >= 1/2, empty boxes, and axis-dependent h.
Grid build_grid(const std::array<double, 2>& box_min,
                const std::array<double, 2>& box_max,
                const std::array<int, 2>& cells_per_axis, int dim);

/// 1D convenience overload.
Grid build_grid(double box_min, double box_max, int cells);

//------------------------------------------------------------------------------
// Regions: an interior domain omega and two exterior measurement windows.
//------------------------------------------------------------------------------

/// Cell index sets for the exterior-value problem.  omega is disjoint from
/// w1 and w2 and separated from them by at least h; w1 and w2 may coincide
/// (the monotonicity tests use w1 == w2) or overlap.
struct RegionSet {
  std::vector<int> omega;
  std::vector<int> w1;
  std::vector<int> w2;
  /// Partition of omega into blocks (used by the blockwise reconstruction);
  /// defaults to the single block omega.
  std::vector<std::vector<int>> partition;

  /// Complement of omega in the grid, sorted.
  std::vector<int> exterior(const Grid& g) const;
};

/// Validate and assemble a region set from explicit cell lists.
/// Throws std::invalid_argument naming offending cells on:
/// out-of-range indices, duplicates, omega touching a window (distance < h),
/// or a partition that is not a disjoint cover of omega.
RegionSet define_regions(const Grid& g, std::vector<int> omega,
                         std::vector<int> w1, std::vector<int> w2,
                         std::vector<std::vector<int>> partition = {});

/// Cells whose centers lie in the closed box [lo, hi].
std::vector<int> cells_in_box(const Grid& g, const std::array<double, 2>& lo,
                              const std::array<double, 2>& hi);

/// Split a cell set into k blocks of consecutive indices (sizes differing by
/// at most one); used for canonical block partitions.
std::vector<std::vector<int>> equal_blocks(const std::vector<int>& cells, int k);

//------------------------------------------------------------------------------
// Cell fields
//------------------------------------------------------------------------------

enum class Support { All, Omega, Exterior, W1, W2 };

/// A piecewise-constant function given by one value per cell.
struct CellField {
  Eigen::VectorXd values;  ///< size == grid.num_cells()
  Support support = Support::All;

  /// Throws if the size mismatches the grid or a value is nonzero outside
  /// the declared support.
  void validate(const Grid& g, const RegionSet& r) const;
};

/// Indices where a support tag lives (All -> every cell).
std::vector<int> support_cells(const Grid& g, const RegionSet& r, Support s);

}  // namespace loglap

#endif

#pragma once

// Shared fixtures for the test binaries: canonical grids, region layouts,
// and random-field helpers.

#include <Eigen/Dense>
#include <random>
#include <vector>

#include <loglap/forms.hpp>
#include <loglap/grid.hpp>

namespace testutil {

using namespace loglap;

inline std::vector<int> index_range(int lo, int hi) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(hi > lo ? hi - lo : 0));
  for (int i = lo; i < hi; ++i) out.push_back(i);
  return out;
}

inline std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// 1D box [-2,2] at h = 1/16 with a centered 16-cell interior and 15-cell
/// windows on both sides, each separated from the interior by one empty cell.
struct Fixture1D {
  Grid g;
  RegionSet r;

  explicit Fixture1D(int blocks = 1, bool shared_window = true)
      : g(build_grid(-2.0, 2.0, 64)) {
    const std::vector<int> omega = index_range(24, 40);
    const std::vector<int> left = index_range(8, 23);
    const std::vector<int> right = index_range(41, 56);
    const std::vector<int> both = concat(left, right);
    r = define_regions(g, omega, shared_window ? both : left,
                       shared_window ? both : right,
                       equal_blocks(omega, blocks));
  }
};

/// 1D box [-2,2] at h = 1/16 whose interior is four well-separated 4-cell
/// islands with measurement cells interleaved between them.  Every interior
/// cell sits within two cells of data, which keeps the one-sided slack of the
/// discrete monotonicity tests at the bisection-tolerance level; a connected
/// interior buries its middle cells too deep for any data to resolve them.
struct IslandFixture1D {
  Grid g;
  RegionSet r;

  IslandFixture1D() : g(build_grid(-2.0, 2.0, 64)) {
    const std::vector<std::vector<int>> blocks = {
        index_range(12, 16), index_range(21, 25), index_range(30, 34),
        index_range(39, 43)};
    std::vector<int> omega;
    for (const auto& b : blocks) omega = concat(omega, b);
    std::vector<int> w = index_range(0, 11);
    w = concat(w, index_range(17, 20));
    w = concat(w, index_range(26, 29));
    w = concat(w, index_range(35, 38));
    w = concat(w, index_range(44, 64));
    r = define_regions(g, omega, w, w, blocks);
  }
};

/// Smaller 1D layout for cheap solver-level tests: 32 cells, 8-cell interior.
struct SmallFixture1D {
  Grid g;
  RegionSet r;

  explicit SmallFixture1D(bool shared_window = true)
      : g(build_grid(-1.0, 1.0, 32)) {
    const std::vector<int> omega = index_range(12, 20);
    const std::vector<int> left = index_range(2, 11);
    const std::vector<int> right = index_range(21, 30);
    const std::vector<int> both = concat(left, right);
    r = define_regions(g, omega, shared_window ? both : left,
                       shared_window ? both : right);
  }
};

/// 2D box [-2,2]^2 at h = 1/4 with the centered 8x8 interior and the outer
/// frame (one-cell gap ring excluded) as the shared measurement window.
struct Fixture2D {
  Grid g;
  RegionSet r;

  explicit Fixture2D(int blocks = 1)
      : g(build_grid({-2.0, -2.0}, {2.0, 2.0}, {16, 16}, 2)) {
    std::vector<int> omega;
    std::vector<int> frame;
    for (int iy = 0; iy < 16; ++iy) {
      for (int ix = 0; ix < 16; ++ix) {
        const bool in_omega = ix >= 4 && ix <= 11 && iy >= 4 && iy <= 11;
        const bool in_gap = ix >= 3 && ix <= 12 && iy >= 3 && iy <= 12;
        if (in_omega)
          omega.push_back(g.index(ix, iy));
        else if (!in_gap)
          frame.push_back(g.index(ix, iy));
      }
    }
    r = define_regions(g, omega, frame, frame, equal_blocks(omega, blocks));
  }
};

/// Zero field of full grid size with the given support tag.
inline CellField zero_field(const Grid& g, Support s) {
  CellField f;
  f.support = s;
  f.values = Eigen::VectorXd::Zero(g.num_cells());
  return f;
}

/// Field equal to `value` on `cells`, zero elsewhere.
inline CellField constant_field(const Grid& g, const std::vector<int>& cells,
                                Support s, double value) {
  CellField f = zero_field(g, s);
  for (int i : cells) f.values(i) = value;
  return f;
}

/// Uniform(lo, hi) samples on `cells`, zero elsewhere.
inline CellField random_field(const Grid& g, const std::vector<int>& cells,
                              Support s, std::mt19937& rng, double lo = -1.0,
                              double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  CellField f = zero_field(g, s);
  for (int i : cells) f.values(i) = dist(rng);
  return f;
}

inline double min_eigenvalue(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace testutil

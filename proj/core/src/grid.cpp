#include "loglap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "loglap/io.hpp"

namespace loglap {

namespace {

void check_index_list(const Grid& g, const std::vector<int>& cells,
                      const char* name, bool allow_empty) {
  if (cells.empty()) {
    if (allow_empty) return;
    throw std::invalid_argument(std::string("define_regions: ") + name +
                                " must be nonempty");
  }
  std::set<int> seen;
  for (int c : cells) {
    if (c < 0 || c >= g.num_cells())
      throw std::invalid_argument(std::string("define_regions: ") + name +
                                  " cell " + std::to_string(c) +
                                  " out of range");
    if (!seen.insert(c).second)
      throw std::invalid_argument(std::string("define_regions: ") + name +
                                  " cell " + std::to_string(c) + " duplicated");
  }
}

// Closed cells are separated by >= h iff some axis offset is >= 2.
bool separated_by_h(const Grid& g, int a, int b) {
  const auto ca = g.coords(a), cb = g.coords(b);
  for (int k = 0; k < g.dim; ++k)
    if (std::abs(ca[k] - cb[k]) >= 2) return true;
  return false;
}

}  // namespace

std::string Grid::hash() const {
  std::ostringstream os;
  os << "grid:" << dim;
  for (int k = 0; k < dim; ++k)
    os << ':' << format_double(lo[k]) << ':' << format_double(hi[k]) << ':'
       << cells[k];
  return hex64(fnv1a64(os.str()));
}

Grid build_grid(const std::array<double, 2>& box_min,
                const std::array<double, 2>& box_max,
                const std::array<int, 2>& cells_per_axis, int dim) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("build_grid: dimension must be 1 or 2");
  Grid g;
  g.dim = dim;
  g.cells = {1, 1};
  for (int k = 0; k < dim; ++k) {
    if (cells_per_axis[k] < 1)
      throw std::invalid_argument("build_grid: cells_per_axis must be >= 1");
    if (!(box_max[k] > box_min[k]))
      throw std::invalid_argument("build_grid: box must have positive extent");
    g.lo[k] = box_min[k];
    g.hi[k] = box_max[k];
    g.cells[k] = cells_per_axis[k];
  }
  g.h = (g.hi[0] - g.lo[0]) / g.cells[0];
  for (int k = 1; k < dim; ++k) {
    const double hk = (g.hi[k] - g.lo[k]) / g.cells[k];
    if (std::abs(hk - g.h) > 1e-12 * g.h)
      throw std::invalid_argument(
          "build_grid: mesh width must be equal along all axes");
  }
  if (!(g.h < 0.5))
    throw std::invalid_argument(
        "build_grid: h must be < 1/2 (cell straddles the unit-ball cutoff), got h = " +
        format_double(g.h));
  return g;
}

Grid build_grid(double box_min, double box_max, int cells) {
  return build_grid({box_min, 0.0}, {box_max, 0.0}, {cells, 1}, 1);
}

std::vector<int> RegionSet::exterior(const Grid& g) const {
  std::vector<char> in(g.num_cells(), 0);
  for (int c : omega) in[c] = 1;
  std::vector<int> ext;
  ext.reserve(g.num_cells() - omega.size());
  for (int c = 0; c < g.num_cells(); ++c)
    if (!in[c]) ext.push_back(c);
  return ext;
}

RegionSet define_regions(const Grid& g, std::vector<int> omega,
                         std::vector<int> w1, std::vector<int> w2,
                         std::vector<std::vector<int>> partition) {
  // The interior is mandatory; measurement windows are optional (window-less
  // region sets back assembly- and spectrum-only runs).
  check_index_list(g, omega, "omega", /*allow_empty=*/false);
  check_index_list(g, w1, "w1", /*allow_empty=*/true);
  check_index_list(g, w2, "w2", /*allow_empty=*/true);
  std::sort(omega.begin(), omega.end());
  std::sort(w1.begin(), w1.end());
  std::sort(w2.begin(), w2.end());

  // omega must keep a gap of at least h to both windows
  for (const auto* w : {&w1, &w2})
    for (int b : *w)
      for (int a : omega)
        if (!separated_by_h(g, a, b))
          throw std::invalid_argument(
              "define_regions: window cell " + std::to_string(b) +
              " is closer than h to omega cell " + std::to_string(a));

  RegionSet r;
  r.omega = std::move(omega);
  r.w1 = std::move(w1);
  r.w2 = std::move(w2);

  if (partition.empty()) partition.push_back(r.omega);
  std::set<int> covered;
  for (std::size_t b = 0; b < partition.size(); ++b) {
    if (partition[b].empty())
      throw std::invalid_argument("define_regions: partition block " +
                                  std::to_string(b) + " is empty");
    for (int c : partition[b]) {
      if (!std::binary_search(r.omega.begin(), r.omega.end(), c))
        throw std::invalid_argument("define_regions: partition cell " +
                                    std::to_string(c) + " not in omega");
      if (!covered.insert(c).second)
        throw std::invalid_argument("define_regions: partition cell " +
                                    std::to_string(c) +
                                    " appears in two blocks");
    }
    std::sort(partition[b].begin(), partition[b].end());
  }
  if (covered.size() != r.omega.size())
    throw std::invalid_argument(
        "define_regions: partition does not cover omega");
  r.partition = std::move(partition);
  return r;
}

std::vector<int> cells_in_box(const Grid& g, const std::array<double, 2>& lo,
                              const std::array<double, 2>& hi) {
  const double tol = 1e-9 * g.h;
  std::vector<int> out;
  for (int c = 0; c < g.num_cells(); ++c) {
    const auto x = g.center(c);
    bool inside = true;
    for (int k = 0; k < g.dim; ++k)
      inside = inside && x[k] >= lo[k] - tol && x[k] <= hi[k] + tol;
    if (inside) out.push_back(c);
  }
  return out;
}

std::vector<std::vector<int>> equal_blocks(const std::vector<int>& cells,
                                           int k) {
  if (k < 1 || k > static_cast<int>(cells.size()))
    throw std::invalid_argument("equal_blocks: invalid block count");
  std::vector<std::vector<int>> blocks(k);
  const int n = static_cast<int>(cells.size());
  int pos = 0;
  for (int b = 0; b < k; ++b) {
    const int len = n / k + (b < n % k ? 1 : 0);
    blocks[b].assign(cells.begin() + pos, cells.begin() + pos + len);
    pos += len;
  }
  return blocks;
}

void CellField::validate(const Grid& g, const RegionSet& r) const {
  if (values.size() != g.num_cells())
    throw std::invalid_argument("CellField: size " +
                                std::to_string(values.size()) +
                                " does not match grid with " +
                                std::to_string(g.num_cells()) + " cells");
  if (support == Support::All) return;
  const auto cells = support_cells(g, r, support);
  std::vector<char> in(g.num_cells(), 0);
  for (int c : cells) in[c] = 1;
  for (int c = 0; c < g.num_cells(); ++c)
    if (!in[c] && values[c] != 0.0)
      throw std::invalid_argument("CellField: nonzero value at cell " +
                                  std::to_string(c) +
                                  " outside the declared support");
}

std::vector<int> support_cells(const Grid& g, const RegionSet& r, Support s) {
  switch (s) {
    case Support::Omega:
      return r.omega;
    case Support::W1:
      return r.w1;
    case Support::W2:
      return r.w2;
    case Support::Exterior:
      return r.exterior(g);
    case Support::All: {
      std::vector<int> all(g.num_cells());
      for (int c = 0; c < g.num_cells(); ++c) all[c] = c;
      return all;
    }
  }
  throw std::logic_error("support_cells: unknown tag");
}

}  // namespace loglap

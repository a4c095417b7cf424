#include "loglap/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace loglap {

namespace {

std::vector<int> checked_sorted(const std::vector<int>& cells, Eigen::Index n) {
  if (cells.empty()) throw std::invalid_argument("interior cell list is empty");
  std::vector<int> out = cells;
  std::sort(out.begin(), out.end());
  if (out.front() < 0 || out.back() >= n)
    throw std::invalid_argument("interior cell index out of range");
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw std::invalid_argument("interior cell list has duplicates");
  return out;
}

Eigen::MatrixXd block(const Eigen::MatrixXd& a, const std::vector<int>& idx) {
  const Eigen::Index m = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      out(i, j) = a(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  return out;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigenvalue computation failed to converge");
  return solver.eigenvalues();
}

}  // namespace

double SpectrumReport::lambda1() const {
  if (eigenvalues.empty())
    throw std::logic_error("spectrum report holds no eigenvalues");
  return eigenvalues.front();
}

SpectrumReport dirichlet_spectrum(const SymmetricForm& K,
                                  const SymmetricForm& mass,
                                  const std::vector<int>& omega, int k) {
  if (K.matrix.rows() != mass.matrix.rows())
    throw std::invalid_argument("kernel and mass forms have different sizes");
  const std::vector<int> idx = checked_sorted(omega, K.matrix.rows());
  if (k < 1 || k > static_cast<int>(idx.size()))
    throw std::invalid_argument("requested eigenvalue count is out of range");

  // Cholesky reduction of the generalized problem: the mass block must be
  // diagonal with positive entries.
  const Eigen::MatrixXd m_block = block(mass.matrix, idx);
  const Eigen::Index n = m_block.rows();
  double max_diag = 0.0, max_offdiag = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    max_diag = std::max(max_diag, std::abs(m_block(i, i)));
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) max_offdiag = std::max(max_offdiag, std::abs(m_block(i, j)));
  }
  if (max_offdiag > 1e-14 * std::max(max_diag, 1e-300))
    throw std::invalid_argument("mass block must be diagonal");
  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(m_block(i, i) > 0.0))
      throw std::invalid_argument("mass block must have positive diagonal entries");
    inv_sqrt(i) = 1.0 / std::sqrt(m_block(i, i));
  }
  const Eigen::MatrixXd k_block = block(K.matrix, idx);
  const Eigen::MatrixXd reduced =
      inv_sqrt.asDiagonal() * k_block * inv_sqrt.asDiagonal();
  const Eigen::VectorXd ev = symmetric_eigenvalues(0.5 * (reduced + reduced.transpose()));

  SpectrumReport rep;
  rep.eigenvalues.assign(ev.data(), ev.data() + k);
  rep.lambda0_margin = rep.eigenvalues.front();
  rep.condition_satisfied = rep.lambda0_margin > 0.0;
  return rep;
}

SpectrumReport coercivity_check(const Grid& g, const SymmetricForm& K,
                                const SymmetricForm& Q,
                                const std::vector<int>& omega) {
  if (K.matrix.rows() != g.num_cells() || Q.matrix.rows() != g.num_cells())
    throw std::invalid_argument("forms do not match the grid size");
  const std::vector<int> idx = checked_sorted(omega, g.num_cells());
  const double vol = std::pow(g.h, g.dim);

  const SymmetricForm mass = mass_matrix(g);
  SpectrumReport rep =
      dirichlet_spectrum(K, mass, idx, static_cast<int>(idx.size()));

  double min_q = std::numeric_limits<double>::infinity();
  for (int i : idx) min_q = std::min(min_q, Q.matrix(i, i) / vol);
  rep.lambda0_margin = rep.lambda1() + min_q;
  rep.condition_satisfied = rep.lambda0_margin > 0.0;

  const Eigen::MatrixXd ab = block(K.matrix + Q.matrix, idx);
  const Eigen::VectorXd ev = symmetric_eigenvalues(0.5 * (ab + ab.transpose()));
  rep.min_block_eigenvalue = ev(0);
  rep.block_positive_definite = ev(0) > 0.0;
  return rep;
}

std::vector<ExpansionRow> fractional_expansion_check(
    const Grid& g, const std::vector<double>& s_list, const QuadratureSpec& spec,
    int threads) {
  if (s_list.empty())
    throw std::invalid_argument(
        "fractional_expansion_check: need at least one order s");
  const SymmetricForm k_log = assemble_log_form(g, spec, threads);
  const SymmetricForm mass = mass_matrix(g);
  std::vector<ExpansionRow> rows;
  rows.reserve(s_list.size());
  for (double s : s_list) {
    const SymmetricForm k_s = assemble_fractional_form(g, s, spec, threads);
    const Eigen::MatrixXd defect =
        (k_s.matrix - mass.matrix) / s - k_log.matrix;
    ExpansionRow row;
    row.s = s;
    row.max_entry_error = defect.cwiseAbs().maxCoeff();
    rows.push_back(row);
  }
  return rows;
}

ScalingLawReport scaling_law_check(int cells, double h, const QuadratureSpec& spec,
                                   int threads) {
  if (cells < 1) throw std::invalid_argument("cell count must be positive");
  if (!(h > 0.0) || !(h < 0.5))
    throw std::invalid_argument("cell width must lie in (0, 1/2)");
  const auto lambda1_of = [&](int m) {
    const Grid g = build_grid(0.0, m * h, m);
    const SymmetricForm K = assemble_log_form(g, spec, threads);
    const SymmetricForm mass = mass_matrix(g);
    std::vector<int> all(static_cast<std::size_t>(g.num_cells()));
    for (int i = 0; i < g.num_cells(); ++i) all[static_cast<std::size_t>(i)] = i;
    return dirichlet_spectrum(K, mass, all, 1).lambda1();
  };
  ScalingLawReport rep;
  rep.lambda1_base = lambda1_of(cells);
  rep.lambda1_scaled = lambda1_of(2 * cells);
  rep.defect =
      std::abs(rep.lambda1_scaled - (rep.lambda1_base - 2.0 * std::log(2.0)));
  return rep;
}

}  // namespace loglap

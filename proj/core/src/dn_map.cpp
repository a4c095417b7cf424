#include "loglap/dn_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace loglap {

namespace {

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& a, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          a(rows[i], cols[j]);
  return out;
}

Eigen::VectorXd zero_field_values(const Grid& g) {
  return Eigen::VectorXd::Zero(g.num_cells());
}

}  // namespace

double DNMatrix::symmetry_defect() const {
  if (rows_w2 != cols_w1)
    throw std::invalid_argument(
        "symmetry defect is defined only when the two windows coincide");
  const Eigen::MatrixXd asym = matrix - matrix.transpose();
  const double scale = std::max(matrix.cwiseAbs().maxCoeff(), 1e-300);
  return asym.cwiseAbs().maxCoeff() / scale;
}

DNMatrix assemble_dn_map(const Grid& g, const RegionSet& r,
                         const SymmetricForm& K, const SymmetricForm& Q,
                         const std::string& q_tag) {
  ForwardSolver solver(g, r, K, Q);
  const std::vector<int>& interior = solver.interior();
  const std::vector<int>& exterior = solver.exterior();
  const Eigen::MatrixXd& a = solver.operator_matrix();

  const Eigen::MatrixXd a_ie = submatrix(a, interior, exterior);
  const Eigen::MatrixXd a_ee = submatrix(a, exterior, exterior);
  const Eigen::MatrixXd x = solver.solve_interior(a_ie);
  const Eigen::MatrixXd schur = a_ee - a_ie.transpose() * x;

  std::vector<int> pos_in_exterior(g.num_cells(), -1);
  for (std::size_t k = 0; k < exterior.size(); ++k)
    pos_in_exterior[exterior[k]] = static_cast<int>(k);

  DNMatrix dn;
  dn.rows_w2 = r.w2;
  dn.cols_w1 = r.w1;
  std::sort(dn.rows_w2.begin(), dn.rows_w2.end());
  std::sort(dn.cols_w1.begin(), dn.cols_w1.end());
  dn.q_tag = q_tag;
  dn.grid_hash = g.hash();
  dn.matrix.resize(static_cast<Eigen::Index>(dn.rows_w2.size()),
                   static_cast<Eigen::Index>(dn.cols_w1.size()));
  for (std::size_t i = 0; i < dn.rows_w2.size(); ++i) {
    const int ri = pos_in_exterior[dn.rows_w2[i]];
    if (ri < 0) throw std::logic_error("measurement window cell is not exterior");
    for (std::size_t j = 0; j < dn.cols_w1.size(); ++j) {
      const int cj = pos_in_exterior[dn.cols_w1[j]];
      if (cj < 0) throw std::logic_error("data window cell is not exterior");
      dn.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          schur(ri, cj);
    }
  }
  return dn;
}

double dn_pairing(const DNMatrix& dn, const Eigen::VectorXd& f_w1,
                  const Eigen::VectorXd& g_w2) {
  if (f_w1.size() != dn.matrix.cols() || g_w2.size() != dn.matrix.rows())
    throw std::invalid_argument("pairing: coefficient sizes do not match the windows");
  return g_w2.dot(dn.matrix * f_w1);
}

IdentityReport integral_identity_residual(const Grid& g, const RegionSet& r,
                                          const SymmetricForm& K,
                                          const CellField& q1,
                                          const CellField& q2,
                                          const CellField& f1,
                                          const CellField& f2) {
  if (f1.support != Support::W1)
    throw std::invalid_argument("first datum must be supported in the data window");
  if (f2.support != Support::W2)
    throw std::invalid_argument("second datum must be supported in the measurement window");
  f1.validate(g, r);
  f2.validate(g, r);

  const SymmetricForm Q1 = assemble_potential(g, r, q1);
  const SymmetricForm Q2 = assemble_potential(g, r, q2);
  const DNMatrix dn1 = assemble_dn_map(g, r, K, Q1, "q1");
  const DNMatrix dn2 = assemble_dn_map(g, r, K, Q2, "q2");

  Eigen::VectorXd f1_w(static_cast<Eigen::Index>(dn1.cols_w1.size()));
  for (std::size_t j = 0; j < dn1.cols_w1.size(); ++j)
    f1_w(static_cast<Eigen::Index>(j)) = f1.values(dn1.cols_w1[j]);
  Eigen::VectorXd f2_w(static_cast<Eigen::Index>(dn1.rows_w2.size()));
  for (std::size_t i = 0; i < dn1.rows_w2.size(); ++i)
    f2_w(static_cast<Eigen::Index>(i)) = f2.values(dn1.rows_w2[i]);

  IdentityReport rep;
  rep.lhs = dn_pairing(dn1, f1_w, f2_w) - dn_pairing(dn2, f1_w, f2_w);

  CellField zero_load;
  zero_load.support = Support::Omega;
  zero_load.values = zero_field_values(g);
  ForwardSolver solver1(g, r, K, Q1);
  ForwardSolver solver2(g, r, K, Q2);
  const CellField u1 = solver1.solve(f1, zero_load).u;
  const CellField u2 = solver2.solve(f2, zero_load).u;

  const double vol = std::pow(g.h, g.dim);
  double rhs = 0.0;
  for (int i : r.omega)
    rhs += (q1.values(i) - q2.values(i)) * u1.values(i) * u2.values(i) * vol;
  rep.rhs = rhs;
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

std::shared_ptr<const DNMatrix> DNCache::find(const std::string& grid_hash,
                                              const std::string& q_tag) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto it = entries_.find({grid_hash, q_tag});
  return it == entries_.end() ? nullptr : it->second;
}

std::shared_ptr<const DNMatrix> DNCache::insert(
    std::shared_ptr<const DNMatrix> dn) {
  if (!dn) throw std::invalid_argument("cannot cache a null measurement matrix");
  std::lock_guard<std::mutex> lock(mutex_);
  const auto key = std::make_pair(dn->grid_hash, dn->q_tag);
  const auto it = entries_.find(key);
  if (it != entries_.end()) return it->second;
  entries_.emplace(key, dn);
  return dn;
}

std::size_t DNCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

}  // namespace loglap

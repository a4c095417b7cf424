#include "loglap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace loglap {

namespace {

std::vector<int> sorted_copy(const std::vector<int>& v) {
  std::vector<int> out = v;
  std::sort(out.begin(), out.end());
  return out;
}

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

Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = v(idx[i]);
  return out;
}

void require_form_on_grid(const SymmetricForm& form, const Grid& g,
                          const char* label) {
  if (form.matrix.rows() != g.num_cells() || form.matrix.cols() != g.num_cells()) {
    std::ostringstream os;
    os << label << " form has size " << form.matrix.rows() << "x"
       << form.matrix.cols() << " but the grid has " << g.num_cells() << " cells";
    throw std::invalid_argument(os.str());
  }
  if (!form.grid_hash.empty() && form.grid_hash != g.hash()) {
    std::ostringstream os;
    os << label << " form was assembled on a different grid (hash "
       << form.grid_hash << " vs " << g.hash() << ")";
    throw std::invalid_argument(os.str());
  }
}

/// Factor a symmetric block and demand positive definiteness; the error
/// cites the eigenvalue condition that guarantees solvability.
Eigen::LDLT<Eigen::MatrixXd> factor_positive_definite(const Eigen::MatrixXd& block,
                                                      const char* label) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(block);
  const Eigen::VectorXd d = ldlt.vectorD();
  const double dmax = d.size() ? d.cwiseAbs().maxCoeff() : 0.0;
  const double zero_tol = dmax * 1e-14;
  int n_pos = 0, n_zero = 0, n_neg = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) > zero_tol)
      ++n_pos;
    else if (d(i) < -zero_tol)
      ++n_neg;
    else
      ++n_zero;
  }
  if (n_zero > 0 || n_neg > 0 || ldlt.info() != Eigen::Success) {
    std::ostringstream os;
    os << label << " is not positive definite (inertia +" << n_pos << "/0:"
       << n_zero << "/-" << n_neg
       << "): the eigenvalue condition lambda_1 + min q > 0 is violated, so "
          "the exterior-value problem is not uniquely solvable";
    throw std::runtime_error(os.str());
  }
  return ldlt;
}

}  // namespace

ForwardSolver::ForwardSolver(const Grid& g, const RegionSet& r,
                             const SymmetricForm& K, const SymmetricForm& Q,
                             double solver_tol)
    : grid_(g), regions_(r), solver_tol_(solver_tol) {
  if (r.omega.empty()) throw std::invalid_argument("interior region is empty");
  for (int i : r.omega)
    if (i < 0 || i >= g.num_cells())
      throw std::invalid_argument("interior cell index out of range");
  require_form_on_grid(K, g, "kernel");
  require_form_on_grid(Q, g, "potential");
  A_ = K.matrix + Q.matrix;
  interior_ = sorted_copy(r.omega);
  exterior_ = r.exterior(g);
  std::sort(exterior_.begin(), exterior_.end());
  const Eigen::MatrixXd a_ii = submatrix(A_, interior_, interior_);
  interior_ldlt_ = factor_positive_definite(a_ii, "interior operator block");
}

double ForwardSolver::cell_volume() const {
  return std::pow(grid_.h, grid_.dim);
}

Eigen::MatrixXd ForwardSolver::solve_interior(const Eigen::MatrixXd& rhs) const {
  if (rhs.rows() != static_cast<Eigen::Index>(interior_.size()))
    throw std::invalid_argument("interior solve: right-hand side has wrong row count");
  return interior_ldlt_.solve(rhs);
}

SolveReport ForwardSolver::solve(const CellField& f, const CellField& F,
                                 const SymmetricForm* gram) const {
  f.validate(grid_, regions_);
  F.validate(grid_, regions_);
  if (f.support == Support::Omega || f.support == Support::All)
    throw std::invalid_argument(
        "exterior data must be supported outside the interior region");
  if (F.support != Support::Omega)
    throw std::invalid_argument("interior load must be supported on the interior region");

  const double vol = cell_volume();
  const Eigen::VectorXd f_e = gather(f.values, exterior_);
  const Eigen::VectorXd load_i = gather(F.values, interior_);
  const Eigen::MatrixXd a_ie = submatrix(A_, interior_, exterior_);
  const Eigen::VectorXd rhs = vol * load_i - a_ie * f_e;
  const Eigen::VectorXd u_i = interior_ldlt_.solve(rhs);

  SolveReport rep;
  const Eigen::MatrixXd a_ii = submatrix(A_, interior_, interior_);
  const double rhs_norm = rhs.norm();
  rep.linear_residual =
      (a_ii * u_i - rhs).norm() / std::max(rhs_norm, 1e-300);
  if (rep.linear_residual > solver_tol_) {
    std::ostringstream os;
    os << "interior solve residual " << rep.linear_residual
       << " exceeds the solver tolerance " << solver_tol_;
    throw std::runtime_error(os.str());
  }

  CellField u;
  u.support = Support::All;
  u.values = Eigen::VectorXd::Zero(grid_.num_cells());
  for (std::size_t k = 0; k < exterior_.size(); ++k)
    u.values(exterior_[k]) = f_e(static_cast<Eigen::Index>(k));
  for (std::size_t k = 0; k < interior_.size(); ++k)
    u.values(interior_[k]) = u_i(static_cast<Eigen::Index>(k));
  rep.u = u;

  rep.interior_load_norm = std::sqrt(vol) * load_i.norm();
  if (gram != nullptr) {
    require_form_on_grid(*gram, grid_, "gram");
    rep.energy_norm = gram_norm(*gram, u);
    rep.data_trace_norm = trace_norm(grid_, regions_, *gram, f);
    const double denom = rep.interior_load_norm + rep.data_trace_norm;
    rep.stability_ratio = denom > 0.0 ? rep.energy_norm / denom : 0.0;
  }
  return rep;
}

CellField minimal_extension(const Grid& g, const RegionSet& r,
                            const SymmetricForm& gram, const CellField& f) {
  f.validate(g, r);
  require_form_on_grid(gram, g, "gram");
  if (f.support == Support::Omega || f.support == Support::All)
    throw std::invalid_argument(
        "minimal extension expects data supported outside the interior region");
  const std::vector<int> interior = sorted_copy(r.omega);
  std::vector<int> exterior = r.exterior(g);
  std::sort(exterior.begin(), exterior.end());
  const Eigen::MatrixXd g_ii = submatrix(gram.matrix, interior, interior);
  const Eigen::MatrixXd g_ie = submatrix(gram.matrix, interior, exterior);
  const Eigen::VectorXd f_e = gather(f.values, exterior);
  const Eigen::LDLT<Eigen::MatrixXd> ldlt =
      factor_positive_definite(g_ii, "interior Gram block");
  const Eigen::VectorXd x = ldlt.solve(-(g_ie * f_e));
  CellField out;
  out.support = Support::All;
  out.values = Eigen::VectorXd::Zero(g.num_cells());
  for (std::size_t k = 0; k < exterior.size(); ++k)
    out.values(exterior[k]) = f_e(static_cast<Eigen::Index>(k));
  for (std::size_t k = 0; k < interior.size(); ++k)
    out.values(interior[k]) = x(static_cast<Eigen::Index>(k));
  return out;
}

double trace_norm(const Grid& g, const RegionSet& r, const SymmetricForm& gram,
                  const CellField& f) {
  const CellField ext = minimal_extension(g, r, gram, f);
  return gram_norm(gram, ext);
}

double gram_norm(const SymmetricForm& gram, const CellField& v) {
  if (v.values.size() != gram.matrix.rows())
    throw std::invalid_argument("gram norm: field size does not match the form");
  const double q = v.values.dot(gram.matrix * v.values);
  return std::sqrt(std::max(q, 0.0));
}

}  // namespace loglap

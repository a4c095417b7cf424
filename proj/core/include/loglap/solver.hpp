#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "loglap/forms.hpp"
#include "loglap/grid.hpp"

namespace loglap {

struct SolveReport {
  CellField u;  ///< exterior data on exterior cells, solution on interior
  /// Relative residual of the interior linear solve.
  double linear_residual = 0.0;
  /// L2 norm of the interior load F over the interior region.
  double interior_load_norm = 0.0;
  /// Energy (Gram) norm of u; NaN unless a Gram form was supplied.
  double energy_norm = std::numeric_limits<double>::quiet_NaN();
  /// Trace norm of the exterior data (Gram norm of its minimal extension);
  /// NaN unless a Gram form was supplied.
  double data_trace_norm = std::numeric_limits<double>::quiet_NaN();
  /// energy_norm / (interior_load_norm + data_trace_norm); NaN without Gram.
  double stability_ratio = std::numeric_limits<double>::quiet_NaN();
};

/// Exterior-value Dirichlet solver for the operator form A = K + Q:
/// exterior data is imposed strongly on exterior cells, the interior block
/// is factored once (deterministic pivoting) and reused across solves.
class ForwardSolver {
 public:
  /// Factorizes the interior block of K + Q.  Throws std::runtime_error if
  /// the block is not positive definite: the eigenvalue condition
  /// lambda_1(domain) + min q > 0 fails (the block's inertia is cited).
  ForwardSolver(const Grid& g, const RegionSet& r, const SymmetricForm& K,
                const SymmetricForm& Q, double solver_tol = 1e-10);

  /// Solve with exterior data f (support inside the exterior) and interior
  /// load F.  A Gram form, when supplied, fills the energy diagnostics.
  SolveReport solve(const CellField& f, const CellField& F,
                    const SymmetricForm* gram = nullptr) const;

  /// Interior-block solves for arbitrary right-hand sides (one per column).
  Eigen::MatrixXd solve_interior(const Eigen::MatrixXd& rhs) const;

  const Grid& grid() const { return grid_; }
  const RegionSet& regions() const { return regions_; }
  const std::vector<int>& interior() const { return interior_; }
  const std::vector<int>& exterior() const { return exterior_; }
  const Eigen::MatrixXd& operator_matrix() const { return A_; }
  double cell_volume() const;
  double solver_tol() const { return solver_tol_; }

 private:
  Grid grid_;
  RegionSet regions_;
  Eigen::MatrixXd A_;
  std::vector<int> interior_, exterior_;
  Eigen::LDLT<Eigen::MatrixXd> interior_ldlt_;
  double solver_tol_ = 1e-10;
};

/// Extension of exterior data with minimal energy (Gram) norm: the interior
/// rows of G times the extension vanish.
CellField minimal_extension(const Grid& g, const RegionSet& r,
                            const SymmetricForm& gram, const CellField& f);

/// Trace norm of exterior data: the Gram norm of its minimal extension.
double trace_norm(const Grid& g, const RegionSet& r, const SymmetricForm& gram,
                  const CellField& f);

/// Gram norm sqrt(v^T G v) of a full cell field.
double gram_norm(const SymmetricForm& gram, const CellField& v);

}  // namespace loglap

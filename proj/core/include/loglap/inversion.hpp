#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "loglap/dn_map.hpp"
#include "loglap/forms.hpp"
#include "loglap/grid.hpp"
#include "loglap/solver.hpp"

namespace loglap {

struct MonotonicityVerdict {
  double min_eigenvalue = 0.0;  ///< of the symmetrized difference L2 - L1
  bool psd = false;             ///< min_eigenvalue >= -tolerance
  double tolerance = 0.0;
};

/// Orders two measurement operators: verdict on L2 - L1 being positive
/// semidefinite up to tol.  Requires both matrices to share the grid and to
/// use the same square window (rows == cols, identical on both operands).
MonotonicityVerdict monotonicity_compare(const DNMatrix& l1, const DNMatrix& l2,
                                         double tol);

struct BisectionStep {
  double a = 0.0;
  bool verdict = false;  ///< Lambda_{a * block} <= target under psd_tol
};

struct BlockRecovery {
  double value = 0.0;             ///< recovered block amplitude
  bool hit_upper_bound = false;   ///< verdict still true at a_max
  std::vector<BisectionStep> trace;
};

struct ReconstructionConfig {
  double a_max = 2.0;
  double bis_tol = 1e-3;
  /// Negative means automatic: 1e-8 times the max diagonal of the target.
  double psd_tol = -1.0;
};

struct ReconstructionResult {
  std::vector<double> block_values;
  std::vector<BlockRecovery> blocks;
  ReconstructionConfig config;
  double psd_tol_used = 0.0;
};

/// Produces the measurement operator for a candidate potential (same grid,
/// regions, and kernel as the target).
using DNOracle = std::function<DNMatrix(const CellField& q)>;

/// Blockwise reconstruction of a nonnegative potential from its measurement
/// operator: for each partition block E finds, by bisection on [0, a_max],
/// the largest amplitude a such that the operator of a*indicator(E) stays
/// below the target in the semidefinite order.  For targets generated by a
/// potential q this recovers min over E of q exactly up to the tolerances.
ReconstructionResult reconstruct_potential(
    const DNOracle& oracle, const DNMatrix& target, const Grid& g,
    const std::vector<std::vector<int>>& partition,
    const ReconstructionConfig& config = {});

struct RungeFit {
  CellField f;  ///< recovered exterior data, supported on the basis cells
  CellField u;  ///< the field generated by f (solution with zero load)
  double residual = 0.0;  ///< achieved L2 distance to the target on the interior
  double smallest_singular_value = 0.0;  ///< of the data-to-interior map
  double alpha = 0.0;
};

/// Least-squares approximate controllability: finds coefficients of exterior
/// data on the given basis cells whose solution approximates the target on
/// the interior, with Tikhonov weight alpha on the data norm.
/// alpha = 0 requires a nondegenerate data-to-interior map; a rank-deficient
/// map is reported with its smallest singular value.
RungeFit runge_fit(const ForwardSolver& solver, const CellField& target,
                   const std::vector<int>& basis_cells, double alpha);

struct LocalizationStep {
  CellField f;  ///< normalized exterior data
  CellField u;  ///< normalized field
  double alpha = 0.0;
  /// ||u||^2 on the block divided by ||u||^2 on the rest of the interior.
  double ratio = 0.0;
  /// L2 norm of the un-normalized field outside the block (the normalizer).
  double complement_norm = 0.0;
};

/// Localized-potential sequence: drives energy into the block m_cells while
/// normalizing the field outside it, by a Runge fit toward the normalized
/// block indicator with a decaying regularization schedule
/// alpha_k = alpha0 * alpha_decay^k.  Stops early if the normalizer falls
/// below machine tolerance.  m_cells must be a strict subset of the interior.
std::vector<LocalizationStep> localized_potential(
    const ForwardSolver& solver, const std::vector<int>& m_cells,
    const std::vector<int>& basis_cells, int steps, double alpha0 = 1e-3,
    double alpha_decay = 1e-2);

}  // namespace loglap

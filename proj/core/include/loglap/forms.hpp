#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "loglap/grid.hpp"
#include "loglap/quadrature.hpp"

namespace loglap {

/// The bilinear forms assembled over the cell-indicator basis.
enum class FormKind {
  LogKernel,     ///< B0: the logarithmic-Laplacian energy form
  Mass,          ///< L2 inner product (diagonal, h^n)
  Potential,     ///< multiplication by a cell potential (diagonal, q_i h^n)
  FracKernel,    ///< B_s: fractional-seminorm form of order s in (0, 1/2)
  AbsLogGram,    ///< full energy-space Gram: L2 plus |log| symbol part
  ZeroOrderDiff, ///< cutoff squared-difference seminorm (H0-type)
};

/// Serialization tag: "log_B0", "mass", "potential", "fractional_Bs",
/// "abslog_gram", "h0_seminorm".
std::string form_kind_name(FormKind kind);
FormKind form_kind_from_name(const std::string& name);

/// Certified error bounds reported by the symbol-quadrature route.
struct FourierBounds {
  /// Bound on the mass excluded near the symbol singularity at xi = 0.
  double origin_bound = 0.0;
  /// Bound on the residual beyond the truncation radius after the exact
  /// non-oscillatory tail has been added analytically.
  double tail_bound = 0.0;
  /// Largest relative defect of the zero-symbol (Parseval) consistency
  /// check against the exact mass matrix.
  double parseval_defect = 0.0;
};

struct AssemblyReport {
  /// Accumulated bound from cutoff-straddling panels left at maximum
  /// subdivision depth (cutoff kernels only).
  double straddle_bound = 0.0;
  /// Singular panels that exhausted the subdivision budget.
  int max_depth_hits = 0;
  FourierBounds fourier;

  void absorb_pair(const PairQuadDiag& d) {
    straddle_bound += d.straddle_bound;
    max_depth_hits += d.max_depth_hits;
  }
};

struct SymmetricForm {
  FormKind kind = FormKind::Mass;
  double s = 0.0;  ///< order parameter, nonzero only for FracKernel
  Eigen::MatrixXd matrix;
  std::string grid_hash;
  QuadratureSpec quad;
  AssemblyReport report;

  /// Throws unless the matrix is square of grid size and symmetric to
  /// 1e-12 relative.
  void validate(const Grid& g) const;
};

/// Largest symmetry defect |A_ij - A_ji| / max(1, |A_ij|).
double max_symmetry_defect(const Eigen::MatrixXd& m);

/// Largest entrywise relative discrepancy between two equally sized
/// matrices: max |a-b| / max(|a|, |b|), zero entries compared absolutely
/// against the largest magnitude in either matrix.
double max_relative_discrepancy(const Eigen::MatrixXd& a,
                                const Eigen::MatrixXd& b);

/// Diagonal L2 Gram matrix: h^n per cell.
SymmetricForm mass_matrix(const Grid& g);

/// Logarithmic-kernel energy form assembled by singular-integral
/// quadrature.  Diagonal entries combine the boundary-distance integral of
/// the cell with the zero-order constant; off-diagonal entries are
/// unrestricted power-kernel pair integrals (the near/far split shares one
/// prefactor, so the unit-ball cutoff cancels identically off-diagonal).
SymmetricForm assemble_log_form(const Grid& g, const QuadratureSpec& spec,
                                int threads = 1);

/// Cutoff squared-difference form: diagonal 2x boundary integral,
/// off-diagonal -2x pair integral restricted to the unit ball.
SymmetricForm assemble_h0_form(const Grid& g, const QuadratureSpec& spec,
                               int threads = 1);

/// Fractional-seminorm form of order s in (0, 1/2); s >= 1/2 is rejected
/// because indicator diagonals diverge there.
SymmetricForm assemble_fractional_form(const Grid& g, double s,
                                       const QuadratureSpec& spec,
                                       int threads = 1);

/// Diagonal potential form q_i h^n on the interior region; rejects fields
/// carrying values outside it.
SymmetricForm assemble_potential(const Grid& g, const RegionSet& regions,
                                 const CellField& q);

}  // namespace loglap

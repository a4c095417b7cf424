#pragma once

#include <limits>
#include <vector>

#include "loglap/forms.hpp"
#include "loglap/grid.hpp"

namespace loglap {

struct SpectrumReport {
  /// Ascending generalized eigenvalues (Rayleigh-quotient values) of the
  /// kernel form against the mass form on the selected interior cells.
  std::vector<double> eigenvalues;
  /// lambda_1 + min interior q (q = 0 when no potential participates).
  double lambda0_margin = std::numeric_limits<double>::quiet_NaN();
  /// lambda0_margin > 0.
  bool condition_satisfied = false;
  /// Smallest eigenvalue of the (K + Q) interior block; NaN unless produced
  /// by coercivity_check.
  double min_block_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  /// Whether the (K + Q) interior block is positive definite; meaningful only
  /// for coercivity_check results.
  bool block_positive_definite = false;

  double lambda1() const;
};

/// First k generalized eigenvalues of the kernel form restricted to the given
/// cells against the (diagonal) mass block: discrete Rayleigh quotients
/// B0(u, u) / ||u||_{L2}^2 over fields supported on those cells.
SpectrumReport dirichlet_spectrum(const SymmetricForm& K,
                                  const SymmetricForm& mass,
                                  const std::vector<int>& omega, int k);

/// Full spectrum of K + Q on the interior block plus the eigenvalue-condition
/// margin lambda_1 + min q; block_positive_definite reports the SPD status of
/// the block, which the theory ties to the sign of the margin.
SpectrumReport coercivity_check(const Grid& g, const SymmetricForm& K,
                                const SymmetricForm& Q,
                                const std::vector<int>& omega);

struct ExpansionRow {
  double s = 0.0;
  /// max-norm of (K_s - M)/s - K_log over all matrix entries
  double max_entry_error = 0.0;
};

/// Order-s consistency of the fractional kernel family with the logarithmic
/// kernel: assembles K_s for each s and tabulates the max-norm defect of the
/// first-order expansion (K_s - M)/s vs K_log.  Rows follow s_list order.
std::vector<ExpansionRow> fractional_expansion_check(
    const Grid& g, const std::vector<double>& s_list, const QuadratureSpec& spec,
    int threads = 1);

struct ScalingLawReport {
  double lambda1_base = 0.0;    ///< lambda_1 of the base interval
  double lambda1_scaled = 0.0;  ///< lambda_1 of the doubled interval, same h
  /// |lambda1_scaled - (lambda1_base - 2 log 2)|
  double defect = 0.0;
};

/// Dilation law for the first eigenvalue: doubling the domain shifts
/// lambda_1 by -2 log 2.  Both domains are discretized with the same cell
/// width h (equal cells per unit length), so the defect measures pure
/// discretization drift.  1D: base interval [0, cells*h].
ScalingLawReport scaling_law_check(int cells, double h,
                                   const QuadratureSpec& spec, int threads = 1);

}  // namespace loglap

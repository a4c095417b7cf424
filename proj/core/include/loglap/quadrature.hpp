#ifndef LOGLAP_QUADRATURE_HPP
#define LOGLAP_QUADRATURE_HPP

#include <array>
#include <functional>
#include <vector>

namespace loglap {

/// Knobs shared by every assembly routine.
///
/// gauss_order        points per axis of the tensor Gauss rule on a panel
/// subdivision_depth  dyadic refinement budget for singular / cutoff panels
/// fourier_truncation_radius  R: the symbol quadrature covers |xi| <= R
/// fourier_points     resolution of the symbol quadrature (panels in 1D,
///                    scale-grid points in 2D)
/// origin_exclusion   eps: |xi| < eps is handled by the analytic origin term
struct QuadratureSpec {
  int gauss_order = 4;
  int subdivision_depth = 8;
  double fourier_truncation_radius = 1e4;
  int fourier_points = 6000;
  double origin_exclusion = 1e-4;

  /// Throws std::invalid_argument unless gauss_order >= 2,
  /// subdivision_depth >= 1, fourier_points >= 16, R > 1 and 0 < eps < 1.
  void validate() const;

  /// Spec tuned per dimension (depth 8 in 1D, 6 in 2D).
  static QuadratureSpec defaults_for(int dim);
};

/// Gauss-Legendre rule on [-1, 1]; cached per order (2..32).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_rule(int order);

/// Axis-aligned box in dimension 1 or 2.
struct BoxN {
  int dim = 1;
  std::array<double, 2> lo{{0.0, 0.0}};
  std::array<double, 2> hi{{0.0, 0.0}};

  double width(int k) const { return hi[k] - lo[k]; }
  double volume() const {
    return dim == 1 ? width(0) : width(0) * width(1);
  }
};

/// Distance range [dmin, dmax] between two boxes.
std::array<double, 2> box_distance_range(const BoxN& a, const BoxN& b);

enum class PairKernel {
  Power,                ///< |x-z|^-alpha
  PowerInsideUnitBall,  ///< |x-z|^-alpha restricted to |x-z| <= 1
};

/// Diagnostics accumulated over one pair integral.
struct PairQuadDiag {
  /// Residual bound from cutoff-straddling panels left at max depth.
  double straddle_bound = 0.0;
  /// Singular panels that exhausted the depth budget outside the
  /// self-similar fast path (only possible for cutoff kernels).
  int max_depth_hits = 0;

  void absorb(const PairQuadDiag& o) {
    straddle_bound += o.straddle_bound;
    max_depth_hits += o.max_depth_hits;
  }
};

/// Integral of |x-z|^-alpha over A x B for disjoint boxes, optionally
/// restricted to the unit ball |x-z| <= 1.
///
/// Separated panels use a tensor Gauss rule under a distance/size
/// admissibility test; near pairs are subdivided dyadically.  Touching
/// congruent lattice boxes are resolved exactly through the scaling identity
/// I(lambda A, lambda B) = lambda^{2n-alpha} I(A, B), which telescopes the
/// dyadic subdivision into a closed form.
double box_pair_integral(const BoxN& a, const BoxN& b, double alpha,
                         PairKernel kernel, const QuadratureSpec& spec,
                         PairQuadDiag* diag = nullptr);

/// Radial profile g integrated over rays from cell points to the container
/// boundary; see kappa_boundary_integral.
enum class RadialProfile {
  LogInsideUnitBall,  ///< g(R) = -log R for R < 1, 0 otherwise
  FracPower,          ///< g(R) = R^{-2s} / (2s)  (full complement integral)
};

/// The boundary-distance integral
///     int_{x in cell} int_{S^{n-1}} g(R(theta, x)) dtheta dx,
/// where R(theta, x) is the distance from x to the container boundary along
/// theta (in 1D the sphere is the two directions +-1).  With container ==
/// cell and the log profile this is the kappa integral of the cell: the
/// diagonal near-field mass of the difference form.  The fractional profile
/// integrates the complement kernel |x-z|^{-n-2s} exactly to infinity.
double kappa_boundary_integral(const BoxN& cell, const BoxN& container,
                               RadialProfile profile, double s,
                               const QuadratureSpec& spec);

/// Deterministic static-partition parallel loop (indices 0..n-1).
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace loglap

#endif

#include "loglap/forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "form_internal.hpp"
#include "loglap/constants.hpp"

namespace loglap {

std::string form_kind_name(FormKind kind) {
  switch (kind) {
    case FormKind::LogKernel: return "log_B0";
    case FormKind::Mass: return "mass";
    case FormKind::Potential: return "potential";
    case FormKind::FracKernel: return "fractional_Bs";
    case FormKind::AbsLogGram: return "abslog_gram";
    case FormKind::ZeroOrderDiff: return "h0_seminorm";
  }
  throw std::logic_error("form_kind_name: unknown kind");
}

FormKind form_kind_from_name(const std::string& name) {
  for (FormKind k : {FormKind::LogKernel, FormKind::Mass, FormKind::Potential,
                     FormKind::FracKernel, FormKind::AbsLogGram,
                     FormKind::ZeroOrderDiff})
    if (form_kind_name(k) == name) return k;
  throw std::invalid_argument("unknown form kind: " + name);
}

void SymmetricForm::validate(const Grid& g) const {
  const int n = g.num_cells();
  if (matrix.rows() != n || matrix.cols() != n)
    throw std::invalid_argument("SymmetricForm: matrix size does not match grid");
  const double defect = max_symmetry_defect(matrix);
  if (defect > 1e-12)
    throw std::invalid_argument("SymmetricForm: symmetry defect " +
                                std::to_string(defect) + " exceeds 1e-12");
}

double max_symmetry_defect(const Eigen::MatrixXd& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - m(j, i)) /
                                  std::max(1.0, std::abs(m(i, j))));
  return worst;
}

double max_relative_discrepancy(const Eigen::MatrixXd& a,
                                const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_relative_discrepancy: size mismatch");
  const double floor =
      1e-14 * std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double den = std::max({std::abs(a(i, j)), std::abs(b(i, j)), floor});
      if (den > 0.0)
        worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / den);
    }
  return worst;
}

SymmetricForm mass_matrix(const Grid& g) {
  SymmetricForm f;
  f.kind = FormKind::Mass;
  f.grid_hash = g.hash();
  const double vol = g.dim == 1 ? g.h : g.h * g.h;
  f.matrix = vol * Eigen::MatrixXd::Identity(g.num_cells(), g.num_cells());
  return f;
}

namespace {

// Shared driver: diagonal from the cell boundary-distance integral,
// off-diagonal from pair quadrature with a kernel-specific prefactor.
SymmetricForm assemble_pair_form(const Grid& g, const QuadratureSpec& spec,
                                 int threads, FormKind kind, double s,
                                 double alpha, PairKernel kernel,
                                 RadialProfile profile, double diag_scale,
                                 double diag_shift, double offdiag_scale) {
  spec.validate();
  SymmetricForm f;
  f.kind = kind;
  f.s = s;
  f.grid_hash = g.hash();
  f.quad = spec;

  const BoxN cell{g.dim, {0.0, 0.0}, {g.h, g.dim == 2 ? g.h : 0.0}};
  const double kappa = kappa_boundary_integral(cell, cell, profile, s, spec);
  const double diagonal = diag_scale * kappa + diag_shift;

  detail::OffsetTable table(g);
  std::vector<double> value(table.keys.size());
  std::vector<PairQuadDiag> diags(table.keys.size());
  parallel_for(static_cast<int>(table.keys.size()), threads, [&](int k) {
    const auto [a, b] = detail::offset_boxes(g, table.keys[k]);
    value[k] =
        offdiag_scale * box_pair_integral(a, b, alpha, kernel, spec, &diags[k]);
  });
  for (const auto& d : diags) f.report.absorb_pair(d);

  f.matrix = detail::fill_by_offset(g, table, value, diagonal);
  detail::check_finite(f.matrix, form_kind_name(kind));
  return f;
}

}  // namespace

SymmetricForm assemble_log_form(const Grid& g, const QuadratureSpec& spec,
                                int threads) {
  const LogKernelConstants c = log_constants(g.dim);
  const double vol = g.dim == 1 ? g.h : g.h * g.h;
  // diagonal: c_n * integral of the cell's boundary-distance profile plus
  // the zero-order constant rho_n * |cell|; off-diagonal: -c_n times the
  // unrestricted power-kernel pair integral (the near- and far-field parts
  // carry the same prefactor, so the unit-ball split cancels off-diagonal).
  return assemble_pair_form(g, spec, threads, FormKind::LogKernel, 0.0,
                            /*alpha=*/static_cast<double>(g.dim),
                            PairKernel::Power, RadialProfile::LogInsideUnitBall,
                            /*diag_scale=*/c.c_n, /*diag_shift=*/c.rho_n * vol,
                            /*offdiag_scale=*/-c.c_n);
}

SymmetricForm assemble_h0_form(const Grid& g, const QuadratureSpec& spec,
                               int threads) {
  return assemble_pair_form(g, spec, threads, FormKind::ZeroOrderDiff, 0.0,
                            /*alpha=*/static_cast<double>(g.dim),
                            PairKernel::PowerInsideUnitBall,
                            RadialProfile::LogInsideUnitBall,
                            /*diag_scale=*/2.0, /*diag_shift=*/0.0,
                            /*offdiag_scale=*/-2.0);
}

SymmetricForm assemble_fractional_form(const Grid& g, double s,
                                       const QuadratureSpec& spec,
                                       int threads) {
  if (!(s > 0.0 && s < 0.5))
    throw std::invalid_argument(
        "assemble_fractional_form: order s must lie in (0, 1/2); diagonal "
        "entries of the indicator basis diverge at s >= 1/2 (got s = " +
        std::to_string(s) + ")");
  const double C = frac_constant(g.dim, s);
  return assemble_pair_form(g, spec, threads, FormKind::FracKernel, s,
                            /*alpha=*/g.dim + 2.0 * s, PairKernel::Power,
                            RadialProfile::FracPower,
                            /*diag_scale=*/C, /*diag_shift=*/0.0,
                            /*offdiag_scale=*/-C);
}

SymmetricForm assemble_potential(const Grid& g, const RegionSet& regions,
                                 const CellField& q) {
  q.validate(g, regions);
  if (q.support != Support::Omega && q.support != Support::All)
    throw std::invalid_argument(
        "assemble_potential: potential must be declared on the interior region");
  const int n = g.num_cells();
  std::vector<bool> interior(n, false);
  for (int idx : regions.omega) interior[idx] = true;
  for (int i = 0; i < n; ++i)
    if (!interior[i] && q.values[i] != 0.0)
      throw std::invalid_argument(
          "assemble_potential: potential carries a nonzero value outside the "
          "interior region at cell " +
          std::to_string(i));

  SymmetricForm f;
  f.kind = FormKind::Potential;
  f.grid_hash = g.hash();
  const double vol = g.dim == 1 ? g.h : g.h * g.h;
  f.matrix = Eigen::MatrixXd::Zero(n, n);
  for (int idx : regions.omega) f.matrix(idx, idx) = q.values[idx] * vol;
  return f;
}

}  // namespace loglap

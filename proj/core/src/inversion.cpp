#include "loglap/inversion.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace loglap {

namespace {

double min_symmetric_eigenvalue(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigenvalue computation failed to converge");
  return solver.eigenvalues()(0);
}

void require_comparable(const DNMatrix& l1, const DNMatrix& l2) {
  if (l1.grid_hash != l2.grid_hash)
    throw std::invalid_argument(
        "measurement operators were assembled on different grids");
  if (l1.rows_w2 != l1.cols_w1 || l2.rows_w2 != l2.cols_w1)
    throw std::invalid_argument(
        "semidefinite comparison needs a single square window (rows == cols)");
  if (l1.rows_w2 != l2.rows_w2 || l1.cols_w1 != l2.cols_w1)
    throw std::invalid_argument(
        "measurement operators use different windows and cannot be compared");
}

double cell_volume(const Grid& g) { return std::pow(g.h, g.dim); }

}  // namespace

MonotonicityVerdict monotonicity_compare(const DNMatrix& l1, const DNMatrix& l2,
                                         double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
  require_comparable(l1, l2);
  MonotonicityVerdict verdict;
  verdict.tolerance = tol;
  verdict.min_eigenvalue = min_symmetric_eigenvalue(l2.matrix - l1.matrix);
  verdict.psd = verdict.min_eigenvalue >= -tol;
  return verdict;
}

ReconstructionResult reconstruct_potential(
    const DNOracle& oracle, const DNMatrix& target, const Grid& g,
    const std::vector<std::vector<int>>& partition,
    const ReconstructionConfig& config) {
  if (!oracle) throw std::invalid_argument("reconstruction needs a measurement oracle");
  if (partition.empty())
    throw std::invalid_argument("reconstruction needs a nonempty partition");
  if (!(config.a_max > 0.0))
    throw std::invalid_argument("bisection upper bound must be positive");
  if (!(config.bis_tol > 0.0))
    throw std::invalid_argument("bisection tolerance must be positive");
  if (target.rows_w2 != target.cols_w1)
    throw std::invalid_argument(
        "reconstruction target must use a single square window");

  ReconstructionResult result;
  result.config = config;
  result.psd_tol_used =
      config.psd_tol >= 0.0
          ? config.psd_tol
          : 1e-8 * std::max(target.matrix.diagonal().cwiseAbs().maxCoeff(), 1e-300);

  CellField candidate;
  candidate.support = Support::Omega;

  for (const std::vector<int>& block : partition) {
    if (block.empty()) throw std::invalid_argument("partition block is empty");
    BlockRecovery rec;
    const auto verdict_at = [&](double a) {
      candidate.values = Eigen::VectorXd::Zero(g.num_cells());
      for (int i : block) {
        if (i < 0 || i >= g.num_cells())
          throw std::invalid_argument("partition cell index out of range");
        candidate.values(i) = a;
      }
      const DNMatrix trial = oracle(candidate);
      const bool ok =
          monotonicity_compare(trial, target, result.psd_tol_used).psd;
      rec.trace.push_back({a, ok});
      return ok;
    };

    double lo = 0.0, hi = config.a_max;
    if (verdict_at(config.a_max)) {
      // The inequality never fails on the search interval: the upper bound is
      // too small to bracket the threshold.
      rec.value = config.a_max;
      rec.hit_upper_bound = true;
    } else if (!verdict_at(0.0)) {
      rec.value = 0.0;
    } else {
      while (hi - lo > config.bis_tol) {
        const double mid = 0.5 * (lo + hi);
        if (verdict_at(mid))
          lo = mid;
        else
          hi = mid;
      }
      rec.value = lo;
    }
    result.block_values.push_back(rec.value);
    result.blocks.push_back(std::move(rec));
  }
  return result;
}

RungeFit runge_fit(const ForwardSolver& solver, const CellField& target,
                   const std::vector<int>& basis_cells, double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("regularization must be >= 0");
  if (target.support != Support::Omega)
    throw std::invalid_argument("fit target must be supported on the interior");
  target.validate(solver.grid(), solver.regions());
  if (basis_cells.empty()) throw std::invalid_argument("data basis is empty");
  {
    const std::vector<int>& ext = solver.exterior();
    const std::set<int> ext_set(ext.begin(), ext.end());
    for (int c : basis_cells)
      if (ext_set.find(c) == ext_set.end()) {
        std::ostringstream os;
        os << "data basis cell " << c << " is not an exterior cell";
        throw std::invalid_argument(os.str());
      }
  }
  std::vector<int> basis = basis_cells;
  std::sort(basis.begin(), basis.end());
  if (std::adjacent_find(basis.begin(), basis.end()) != basis.end())
    throw std::invalid_argument("data basis has duplicate cells");

  const Grid& g = solver.grid();
  const std::vector<int>& interior = solver.interior();
  const Eigen::Index ni = static_cast<Eigen::Index>(interior.size());
  const Eigen::Index nw = static_cast<Eigen::Index>(basis.size());

  // Data-to-interior map: column j is the interior field generated by unit
  // data on basis cell j.
  Eigen::MatrixXd a_iw(ni, nw);
  const Eigen::MatrixXd& a = solver.operator_matrix();
  for (Eigen::Index i = 0; i < ni; ++i)
    for (Eigen::Index j = 0; j < nw; ++j)
      a_iw(i, j) = a(interior[static_cast<std::size_t>(i)],
                     basis[static_cast<std::size_t>(j)]);
  const Eigen::MatrixXd lmap = solver.solve_interior(-a_iw);

  Eigen::VectorXd t(ni);
  for (Eigen::Index i = 0; i < ni; ++i)
    t(i) = target.values(interior[static_cast<std::size_t>(i)]);

  RungeFit fit;
  fit.alpha = alpha;
  {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(lmap);
    const Eigen::VectorXd& sv = svd.singularValues();
    fit.smallest_singular_value = sv.size() ? sv(sv.size() - 1) : 0.0;
    const double sigma_max = sv.size() ? sv(0) : 0.0;
    if (alpha == 0.0 &&
        (nw > ni ||
         fit.smallest_singular_value <= 1e-12 * std::max(sigma_max, 1.0))) {
      std::ostringstream os;
      os << "unregularized fit is rank-deficient: smallest singular value "
         << fit.smallest_singular_value;
      throw std::runtime_error(os.str());
    }
  }

  const Eigen::MatrixXd normal =
      lmap.transpose() * lmap +
      alpha * Eigen::MatrixXd::Identity(nw, nw);
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("normal-equation factorization failed");
  const Eigen::VectorXd c = ldlt.solve(lmap.transpose() * t);

  const double vol = cell_volume(g);
  fit.residual = std::sqrt(vol) * (lmap * c - t).norm();

  fit.f.support = Support::Exterior;
  fit.f.values = Eigen::VectorXd::Zero(g.num_cells());
  for (Eigen::Index j = 0; j < nw; ++j)
    fit.f.values(basis[static_cast<std::size_t>(j)]) = c(j);

  fit.u.support = Support::All;
  fit.u.values = fit.f.values;
  const Eigen::VectorXd u_i = lmap * c;
  for (Eigen::Index i = 0; i < ni; ++i)
    fit.u.values(interior[static_cast<std::size_t>(i)]) = u_i(i);
  return fit;
}

std::vector<LocalizationStep> localized_potential(
    const ForwardSolver& solver, const std::vector<int>& m_cells,
    const std::vector<int>& basis_cells, int steps, double alpha0,
    double alpha_decay) {
  if (steps < 1) throw std::invalid_argument("the sequence needs at least one step");
  if (!(alpha0 > 0.0) || !(alpha_decay > 0.0) || !(alpha_decay < 1.0))
    throw std::invalid_argument(
        "regularization schedule needs alpha0 > 0 and decay in (0, 1)");
  if (m_cells.empty()) throw std::invalid_argument("localization block is empty");

  const std::vector<int>& interior = solver.interior();
  const std::set<int> interior_set(interior.begin(), interior.end());
  const std::set<int> m_set(m_cells.begin(), m_cells.end());
  if (m_set.size() != m_cells.size())
    throw std::invalid_argument("localization block has duplicate cells");
  for (int c : m_cells)
    if (interior_set.find(c) == interior_set.end())
      throw std::invalid_argument("localization block must lie in the interior");
  if (m_set.size() == interior_set.size())
    throw std::invalid_argument(
        "localization block must be a strict subset of the interior "
        "(its complement normalizes the sequence)");

  const Grid& g = solver.grid();
  const double vol = cell_volume(g);
  CellField target;
  target.support = Support::Omega;
  target.values = Eigen::VectorXd::Zero(g.num_cells());
  const double block_measure = static_cast<double>(m_cells.size()) * vol;
  for (int c : m_cells) target.values(c) = 1.0 / std::sqrt(block_measure);

  std::vector<LocalizationStep> sequence;
  double alpha = alpha0;
  for (int k = 0; k < steps; ++k, alpha *= alpha_decay) {
    const RungeFit fit = runge_fit(solver, target, basis_cells, alpha);
    double on_block = 0.0, off_block = 0.0;
    for (int i : interior) {
      const double v = fit.u.values(i);
      if (m_set.count(i))
        on_block += vol * v * v;
      else
        off_block += vol * v * v;
    }
    const double total = std::sqrt(on_block + off_block);
    const double complement_norm = std::sqrt(off_block);
    if (complement_norm <= 1e-14 * std::max(total, 1e-300)) break;

    LocalizationStep step;
    step.alpha = alpha;
    step.ratio = on_block / off_block;
    step.complement_norm = complement_norm;
    const double scale = 1.0 / std::sqrt(complement_norm);
    step.f = fit.f;
    step.f.values *= scale;
    step.u = fit.u;
    step.u.values *= scale;
    sequence.push_back(std::move(step));
  }
  return sequence;
}

}  // namespace loglap

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <loglap/forms.hpp>
#include <loglap/fourier.hpp>
#include <loglap/solver.hpp>
#include <random>
#include <stdexcept>

#include "test_util.hpp"

using namespace loglap;
using testutil::SmallFixture1D;

namespace {

struct SolverKit {
  SmallFixture1D fx;
  SymmetricForm k, q, gram;
  ForwardSolver solver;

  SolverKit()
      : fx(),
        k(assemble_log_form(fx.g, QuadratureSpec::defaults_for(1))),
        q(assemble_potential(
            fx.g, fx.r,
            testutil::constant_field(fx.g, fx.r.omega, Support::Omega, 0.5))),
        gram(assemble_abslog_gram(fx.g, QuadratureSpec::defaults_for(1))),
        solver(fx.g, fx.r, k, q) {}
};

const SolverKit& kit() {
  static const SolverKit k;
  return k;
}

}  // namespace

TEST_CASE("zero data and zero load give the zero solution") {
  const auto& K = kit();
  const CellField f = testutil::zero_field(K.fx.g, Support::Exterior);
  const CellField F = testutil::zero_field(K.fx.g, Support::Omega);
  const SolveReport rep = K.solver.solve(f, F);
  CHECK(rep.u.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(rep.interior_load_norm == 0.0);
  CHECK(rep.linear_residual == 0.0);
}

TEST_CASE("exterior data is imposed exactly; interior equation is satisfied") {
  const auto& K = kit();
  std::mt19937 rng(7);
  const CellField f = testutil::random_field(K.fx.g, K.solver.exterior(),
                                             Support::Exterior, rng, -1.0, 1.0);
  const CellField F = testutil::random_field(K.fx.g, K.fx.r.omega,
                                             Support::Omega, rng, -2.0, 2.0);
  const SolveReport rep = K.solver.solve(f, F);

  for (int e : K.solver.exterior()) CHECK(rep.u.values(e) == f.values(e));

  // Interior rows of the operator applied to u recover the projected load.
  const Eigen::VectorXd au = K.solver.operator_matrix() * rep.u.values;
  const double vol = K.solver.cell_volume();
  for (int i : K.fx.r.omega)
    CHECK(au(i) == doctest::Approx(vol * F.values(i)).epsilon(1e-10).scale(1.0));
  CHECK(rep.linear_residual < 1e-12);
  CHECK(rep.interior_load_norm ==
        doctest::Approx(std::sqrt(vol) *
                        Eigen::VectorXd(F.values(K.fx.r.omega)).norm())
            .epsilon(1e-13));
}

TEST_CASE("solution is linear in data and load") {
  const auto& K = kit();
  std::mt19937 rng(21);
  const auto& ext = K.solver.exterior();
  const CellField f1 =
      testutil::random_field(K.fx.g, ext, Support::Exterior, rng, -1.0, 1.0);
  const CellField f2 =
      testutil::random_field(K.fx.g, ext, Support::Exterior, rng, -1.0, 1.0);
  const CellField F1 = testutil::random_field(K.fx.g, K.fx.r.omega,
                                              Support::Omega, rng, -1.0, 1.0);
  const CellField F2 = testutil::random_field(K.fx.g, K.fx.r.omega,
                                              Support::Omega, rng, -1.0, 1.0);
  CellField fsum = f1, Fsum = F1;
  fsum.values += f2.values;
  Fsum.values += F2.values;

  const Eigen::VectorXd lhs = K.solver.solve(fsum, Fsum).u.values;
  const Eigen::VectorXd rhs =
      K.solver.solve(f1, F1).u.values + K.solver.solve(f2, F2).u.values;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("support validation on solve inputs") {
  const auto& K = kit();
  const CellField good_f = testutil::zero_field(K.fx.g, Support::Exterior);
  const CellField good_F = testutil::zero_field(K.fx.g, Support::Omega);
  // Data carried on the interior is rejected.
  const CellField bad_f = testutil::zero_field(K.fx.g, Support::Omega);
  CHECK_THROWS_AS(K.solver.solve(bad_f, good_F), std::invalid_argument);
  // Loads must live on the interior.
  const CellField bad_F = testutil::zero_field(K.fx.g, Support::Exterior);
  CHECK_THROWS_AS(K.solver.solve(good_f, bad_F), std::invalid_argument);
  // Window-supported data is legitimate exterior data.
  const CellField w_f = testutil::zero_field(K.fx.g, Support::W1);
  CHECK_NOTHROW(K.solver.solve(w_f, good_F));
}

TEST_CASE("strongly indefinite potential is rejected with inertia cited") {
  const SmallFixture1D fx;
  const SymmetricForm k = assemble_log_form(fx.g, QuadratureSpec::defaults_for(1));
  const SymmetricForm q = assemble_potential(
      fx.g, fx.r,
      testutil::constant_field(fx.g, fx.r.omega, Support::Omega, -10.0));
  CHECK_THROWS_WITH_AS(ForwardSolver(fx.g, fx.r, k, q),
                       doctest::Contains("not positive definite"),
                       std::runtime_error);
}

TEST_CASE("energy diagnostics with a gram form") {
  const auto& K = kit();
  std::mt19937 rng(3);
  const CellField f = testutil::random_field(K.fx.g, K.solver.exterior(),
                                             Support::Exterior, rng, -1.0, 1.0);
  const CellField F0 = testutil::zero_field(K.fx.g, Support::Omega);
  const SolveReport rep = K.solver.solve(f, F0, &K.gram);

  CHECK(std::isfinite(rep.energy_norm));
  CHECK(rep.energy_norm > 0.0);
  CHECK(rep.data_trace_norm > 0.0);
  // The solution extends f, so its gram norm cannot undercut the minimum
  // over all extensions.
  CHECK(rep.energy_norm >= rep.data_trace_norm - 1e-12);
  CHECK(rep.stability_ratio ==
        doctest::Approx(rep.energy_norm /
                        (rep.interior_load_norm + rep.data_trace_norm))
            .epsilon(1e-13));
}

TEST_CASE("minimal extension: interior stationarity and minimality") {
  const auto& K = kit();
  std::mt19937 rng(5);
  const CellField f = testutil::random_field(K.fx.g, K.solver.exterior(),
                                             Support::Exterior, rng, -1.0, 1.0);
  const CellField ext = minimal_extension(K.fx.g, K.fx.r, K.gram, f);

  for (int e : K.solver.exterior()) CHECK(ext.values(e) == f.values(e));

  // Stationarity: interior rows of G * ext vanish.
  const Eigen::VectorXd residual = K.gram.matrix * ext.values;
  for (int i : K.fx.r.omega) CHECK(std::abs(residual(i)) < 1e-10);

  // Minimality among extensions: the solver's solution and random
  // perturbations of the interior values never have smaller gram norm.
  const double tn = trace_norm(K.fx.g, K.fx.r, K.gram, f);
  CHECK(tn == doctest::Approx(gram_norm(K.gram, ext)).epsilon(1e-13));
  const CellField F0 = testutil::zero_field(K.fx.g, Support::Omega);
  const SolveReport rep = K.solver.solve(f, F0, &K.gram);
  CHECK(tn <= rep.energy_norm + 1e-12);
  for (int trial = 0; trial < 10; ++trial) {
    CellField other = ext;
    for (int i : K.fx.r.omega)
      other.values(i) +=
          std::uniform_real_distribution<double>(-0.5, 0.5)(rng);
    CHECK(gram_norm(K.gram, other) >= tn - 1e-12);
  }
}

TEST_CASE("stability ratio stays bounded across random data") {
  const auto& K = kit();
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const CellField f = testutil::random_field(
        K.fx.g, K.solver.exterior(), Support::Exterior, rng, -1.0, 1.0);
    const CellField F = testutil::random_field(K.fx.g, K.fx.r.omega,
                                               Support::Omega, rng, -1.0, 1.0);
    const SolveReport rep = K.solver.solve(f, F, &K.gram);
    CHECK(std::isfinite(rep.stability_ratio));
    CHECK(rep.stability_ratio > 0.0);
    CHECK(rep.stability_ratio < 1e3);
  }
}

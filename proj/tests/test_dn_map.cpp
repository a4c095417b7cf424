#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <loglap/dn_map.hpp>
#include <loglap/forms.hpp>
#include <loglap/solver.hpp>
#include <memory>
#include <random>

#include "test_util.hpp"

using namespace loglap;
using testutil::SmallFixture1D;

namespace {

Eigen::VectorXd restrict_to(const Eigen::VectorXd& full,
                            const std::vector<int>& cells) {
  Eigen::VectorXd out(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) out[k] = full[cells[k]];
  return out;
}

CellField window_field(const Grid& g, const std::vector<int>& cells,
                       Support s, const Eigen::VectorXd& coeffs) {
  CellField f = testutil::zero_field(g, s);
  for (std::size_t k = 0; k < cells.size(); ++k)
    f.values(cells[k]) = coeffs[static_cast<Eigen::Index>(k)];
  return f;
}

const SymmetricForm& log_form_1d(const Grid& g) {
  static const SymmetricForm k =
      assemble_log_form(g, QuadratureSpec::defaults_for(1));
  return k;
}

}  // namespace

TEST_CASE("measurement operator is symmetric on a shared window") {
  const SmallFixture1D fx;  // W1 == W2
  const SymmetricForm& k = log_form_1d(fx.g);
  std::mt19937 rng(2);
  const CellField q =
      testutil::random_field(fx.g, fx.r.omega, Support::Omega, rng, 0.0, 1.0);
  const DNMatrix dn = assemble_dn_map(fx.g, fx.r, k,
                                      assemble_potential(fx.g, fx.r, q), "q0");

  CHECK(dn.rows_w2 == fx.r.w2);
  CHECK(dn.cols_w1 == fx.r.w1);
  CHECK(dn.q_tag == "q0");
  CHECK(dn.grid_hash == fx.g.hash());
  CHECK(dn.symmetry_defect() <= 1e-10);
}

TEST_CASE("symmetry defect requires matching windows") {
  const SmallFixture1D fx(/*shared_window=*/false);
  const SymmetricForm& k = log_form_1d(fx.g);
  const SymmetricForm q = assemble_potential(
      fx.g, fx.r,
      testutil::constant_field(fx.g, fx.r.omega, Support::Omega, 0.5));
  const DNMatrix dn = assemble_dn_map(fx.g, fx.r, k, q);
  CHECK_THROWS_AS(dn.symmetry_defect(), std::invalid_argument);
}

TEST_CASE("Schur-complement rows agree with direct forward solves") {
  const SmallFixture1D fx;
  const SymmetricForm& k = log_form_1d(fx.g);
  const SymmetricForm q = assemble_potential(
      fx.g, fx.r,
      testutil::constant_field(fx.g, fx.r.omega, Support::Omega, 0.75));
  const DNMatrix dn = assemble_dn_map(fx.g, fx.r, k, q);
  const ForwardSolver solver(fx.g, fx.r, k, q);
  const CellField zero_load = testutil::zero_field(fx.g, Support::Omega);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd f_w1(dn.cols_w1.size());
    for (Eigen::Index i = 0; i < f_w1.size(); ++i) f_w1[i] = dist(rng);
    const CellField f = window_field(fx.g, dn.cols_w1, Support::W1, f_w1);

    const SolveReport rep = solver.solve(f, zero_load);
    const Eigen::VectorXd au = solver.operator_matrix() * rep.u.values;
    const Eigen::VectorXd via_schur = dn.matrix * f_w1;
    const Eigen::VectorXd via_solve = restrict_to(au, dn.rows_w2);
    CHECK((via_schur - via_solve).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("pairing helper matches the bilinear form") {
  const SmallFixture1D fx;
  const SymmetricForm& k = log_form_1d(fx.g);
  const SymmetricForm q = assemble_potential(
      fx.g, fx.r,
      testutil::constant_field(fx.g, fx.r.omega, Support::Omega, 0.2));
  const DNMatrix dn = assemble_dn_map(fx.g, fx.r, k, q);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd f(dn.cols_w1.size()), g2(dn.rows_w2.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = dist(rng);
  for (Eigen::Index i = 0; i < g2.size(); ++i) g2[i] = dist(rng);
  CHECK(dn_pairing(dn, f, g2) == doctest::Approx(g2.dot(dn.matrix * f)).epsilon(1e-14));

  Eigen::VectorXd wrong(dn.cols_w1.size() + 1);
  wrong.setZero();
  CHECK_THROWS_AS(dn_pairing(dn, wrong, g2), std::invalid_argument);
}

TEST_CASE("raising the potential raises the measurement operator") {
  const SmallFixture1D fx;
  const SymmetricForm& k = log_form_1d(fx.g);
  std::mt19937 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const CellField q1 = testutil::random_field(fx.g, fx.r.omega,
                                                Support::Omega, rng, -0.2, 1.0);
    CellField q2 = q1;
    for (int c : fx.r.omega)
      q2.values(c) += std::uniform_real_distribution<double>(0.0, 1.0)(rng);

    const DNMatrix dn1 =
        assemble_dn_map(fx.g, fx.r, k, assemble_potential(fx.g, fx.r, q1));
    const DNMatrix dn2 =
        assemble_dn_map(fx.g, fx.r, k, assemble_potential(fx.g, fx.r, q2));
    const Eigen::MatrixXd diff = dn2.matrix - dn1.matrix;
    CHECK(testutil::min_eigenvalue(diff) >= -1e-10);
  }
}

TEST_CASE("interior energy sandwich for ordered potentials") {
  const SmallFixture1D fx;
  const SymmetricForm& k = log_form_1d(fx.g);
  const double vol = fx.g.h;
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  for (int trial = 0; trial < 10; ++trial) {
    const CellField q1 = testutil::random_field(fx.g, fx.r.omega,
                                                Support::Omega, rng, -0.3, 0.8);
    CellField q2 = q1;
    for (int c : fx.r.omega)
      q2.values(c) += std::uniform_real_distribution<double>(0.0, 1.2)(rng);
    const SymmetricForm Q1 = assemble_potential(fx.g, fx.r, q1);
    const SymmetricForm Q2 = assemble_potential(fx.g, fx.r, q2);

    const DNMatrix dn1 = assemble_dn_map(fx.g, fx.r, k, Q1);
    const DNMatrix dn2 = assemble_dn_map(fx.g, fx.r, k, Q2);

    Eigen::VectorXd f_w(dn1.cols_w1.size());
    for (Eigen::Index i = 0; i < f_w.size(); ++i) f_w[i] = dist(rng);
    const double pairing = f_w.dot((dn2.matrix - dn1.matrix) * f_w);

    const CellField f = window_field(fx.g, dn1.cols_w1, Support::W1, f_w);
    const CellField F0 = testutil::zero_field(fx.g, Support::Omega);
    const ForwardSolver s1(fx.g, fx.r, k, Q1);
    const ForwardSolver s2(fx.g, fx.r, k, Q2);
    const Eigen::VectorXd u1 = s1.solve(f, F0).u.values;
    const Eigen::VectorXd u2 = s2.solve(f, F0).u.values;

    double lower = 0.0, upper = 0.0;
    for (int c : fx.r.omega) {
      const double dq = q2.values(c) - q1.values(c);
      lower += dq * u2[c] * u2[c] * vol;
      upper += dq * u1[c] * u1[c] * vol;
    }
    const double slack =
        1e-9 * std::max({std::abs(lower), std::abs(upper), std::abs(pairing),
                         1e-3});
    CHECK(lower <= pairing + slack);
    CHECK(pairing <= upper + slack);
  }
}

TEST_CASE("integral identity between operator differences and interior products") {
  const SmallFixture1D fx(/*shared_window=*/false);  // f1 in W1, f2 in W2
  const SymmetricForm& k = log_form_1d(fx.g);
  std::mt19937 rng(53);

  for (int trial = 0; trial < 20; ++trial) {
    const CellField q1 = testutil::random_field(fx.g, fx.r.omega,
                                                Support::Omega, rng, -0.5, 1.0);
    const CellField q2 = testutil::random_field(fx.g, fx.r.omega,
                                                Support::Omega, rng, -0.5, 1.0);
    const CellField f1 =
        testutil::random_field(fx.g, fx.r.w1, Support::W1, rng, -1.0, 1.0);
    const CellField f2 =
        testutil::random_field(fx.g, fx.r.w2, Support::W2, rng, -1.0, 1.0);

    const IdentityReport rep =
        integral_identity_residual(fx.g, fx.r, k, q1, q2, f1, f2);
    const double scale =
        std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-6});
    CHECK(rep.residual <= 1e-9 * scale);

    // Swapping the potentials negates the pairing.
    const IdentityReport swapped =
        integral_identity_residual(fx.g, fx.r, k, q2, q1, f1, f2);
    CHECK(swapped.lhs == doctest::Approx(-rep.lhs).epsilon(1e-9).scale(1e-6));
  }

  // Equal potentials: the difference pairing vanishes.
  const CellField q = testutil::constant_field(fx.g, fx.r.omega,
                                               Support::Omega, 0.7);
  const CellField f1 =
      testutil::random_field(fx.g, fx.r.w1, Support::W1, rng, -1.0, 1.0);
  const CellField f2 =
      testutil::random_field(fx.g, fx.r.w2, Support::W2, rng, -1.0, 1.0);
  const IdentityReport rep =
      integral_identity_residual(fx.g, fx.r, k, q, q, f1, f2);
  CHECK(std::abs(rep.lhs) < 1e-12);
  CHECK(std::abs(rep.rhs) < 1e-12);
}

TEST_CASE("operator cache: lookup, first-writer-wins, immutability") {
  const SmallFixture1D fx;
  const SymmetricForm& k = log_form_1d(fx.g);
  const SymmetricForm q = assemble_potential(
      fx.g, fx.r,
      testutil::constant_field(fx.g, fx.r.omega, Support::Omega, 0.1));

  DNCache cache;
  CHECK(cache.find(fx.g.hash(), "a") == nullptr);
  CHECK(cache.size() == 0);

  auto first = std::make_shared<DNMatrix>(assemble_dn_map(fx.g, fx.r, k, q, "a"));
  auto stored = cache.insert(first);
  CHECK(stored.get() == first.get());
  CHECK(cache.size() == 1);
  CHECK(cache.find(fx.g.hash(), "a").get() == first.get());

  // A second insert under the same key keeps the original entry.
  auto second = std::make_shared<DNMatrix>(*first);
  CHECK(cache.insert(second).get() == first.get());
  CHECK(cache.size() == 1);

  // Distinct tags coexist.
  auto other = std::make_shared<DNMatrix>(assemble_dn_map(fx.g, fx.r, k, q, "b"));
  cache.insert(other);
  CHECK(cache.size() == 2);
  CHECK(cache.find(fx.g.hash(), "b").get() == other.get());
  CHECK(cache.find("nope", "a") == nullptr);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <loglap/forms.hpp>
#include <loglap/spectrum.hpp>
#include <random>
#include <stdexcept>

#include "test_util.hpp"

using namespace loglap;

namespace {

struct SpectrumKit {
  Grid g = build_grid(-2.0, 2.0, 64);  // h = 1/16
  std::vector<int> omega = testutil::index_range(24, 40);
  SymmetricForm k, mass;

  SpectrumKit()
      : k(assemble_log_form(g, QuadratureSpec::defaults_for(1))),
        mass(mass_matrix(g)) {}
};

const SpectrumKit& kit() {
  static const SpectrumKit s;
  return s;
}

}  // namespace

TEST_CASE("short-interval spectrum is positive and ascending") {
  // Interval of length 1/4 at h = 1/16: all Rayleigh quotients positive.
  const Grid g = build_grid(0.0, 0.25, 4);
  const SymmetricForm k = assemble_log_form(g, QuadratureSpec::defaults_for(1));
  const SymmetricForm m = mass_matrix(g);
  const std::vector<int> omega{0, 1, 2, 3};
  const SpectrumReport rep = dirichlet_spectrum(k, m, omega, 4);

  REQUIRE(rep.eigenvalues.size() == 4);
  CHECK(rep.lambda1() > 0.0);
  CHECK(std::is_sorted(rep.eigenvalues.begin(), rep.eigenvalues.end()));
  CHECK(rep.lambda0_margin == doctest::Approx(rep.lambda1()).epsilon(1e-15));
  CHECK(rep.condition_satisfied);
  // The eigenvalue gap is reported, never asserted: record it is finite.
  CHECK(std::isfinite(rep.eigenvalues[1] - rep.eigenvalues[0]));
}

TEST_CASE("requesting fewer eigenvalues truncates the ascending list") {
  const auto& K = kit();
  const SpectrumReport all =
      dirichlet_spectrum(K.k, K.mass, K.omega, static_cast<int>(K.omega.size()));
  const SpectrumReport two = dirichlet_spectrum(K.k, K.mass, K.omega, 2);
  REQUIRE(two.eigenvalues.size() == 2);
  CHECK(two.eigenvalues[0] == doctest::Approx(all.eigenvalues[0]).epsilon(1e-13));
  CHECK(two.eigenvalues[1] == doctest::Approx(all.eigenvalues[1]).epsilon(1e-13));
  CHECK_THROWS_AS(dirichlet_spectrum(K.k, K.mass, K.omega, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      dirichlet_spectrum(K.k, K.mass, K.omega,
                         static_cast<int>(K.omega.size()) + 1),
      std::invalid_argument);
}

TEST_CASE("variational consistency: random quotients never undercut lambda_1") {
  const auto& K = kit();
  const SpectrumReport rep = dirichlet_spectrum(K.k, K.mass, K.omega, 1);
  const double lambda1 = rep.lambda1();

  std::mt19937 rng(77);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = K.g.num_cells();
  for (int draw = 0; draw < 1000; ++draw) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int c : K.omega) v[c] = dist(rng);
    const double num = v.dot(K.k.matrix * v);
    const double den = v.dot(K.mass.matrix * v);
    if (den <= 0.0) continue;
    CHECK(num / den >= lambda1 - 1e-8);
  }
}

TEST_CASE("domain monotonicity of the principal eigenvalue") {
  // Fields supported on a subdomain are admissible for the larger domain,
  // so lambda_1 decreases as the domain grows.
  const auto& K = kit();
  const std::vector<int> smaller = testutil::index_range(28, 36);
  const double l_small =
      dirichlet_spectrum(K.k, K.mass, smaller, 1).lambda1();
  const double l_large =
      dirichlet_spectrum(K.k, K.mass, K.omega, 1).lambda1();
  CHECK(l_large < l_small);
}

TEST_CASE("spectrum is invariant under cell relabeling") {
  const auto& K = kit();
  std::vector<int> shuffled = K.omega;
  std::mt19937 rng(5);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const SpectrumReport a = dirichlet_spectrum(K.k, K.mass, K.omega, 3);
  const SpectrumReport b = dirichlet_spectrum(K.k, K.mass, shuffled, 3);
  for (int i = 0; i < 3; ++i)
    CHECK(a.eigenvalues[i] ==
          doctest::Approx(b.eigenvalues[i]).epsilon(1e-12));
}

TEST_CASE("coercivity margin for constant potentials is exact") {
  const auto& K = kit();
  const double lambda1 =
      dirichlet_spectrum(K.k, K.mass, K.omega, 1).lambda1();
  const testutil::Fixture1D fx;  // same grid/omega as the kit

  // Block eigenvalues of K + Q shift exactly by vol * q for constant q.
  for (double q0 : {-lambda1 - 0.1, -lambda1 + 0.1, 0.4}) {
    const SymmetricForm Q = assemble_potential(
        fx.g, fx.r, testutil::constant_field(fx.g, fx.r.omega, Support::Omega, q0));
    const SpectrumReport rep = coercivity_check(fx.g, K.k, Q, fx.r.omega);
    CHECK(rep.lambda0_margin ==
          doctest::Approx(lambda1 + q0).epsilon(1e-10).scale(1.0));
    CHECK(rep.condition_satisfied == (lambda1 + q0 > 0.0));
    // For constant q the block minimum is h * (lambda_1 + q).
    CHECK(rep.min_block_eigenvalue ==
          doctest::Approx(fx.g.h * (lambda1 + q0)).epsilon(1e-8).scale(1.0));
    CHECK(rep.block_positive_definite == (lambda1 + q0 > 0.0));
  }
}

TEST_CASE("fractional family converges to the logarithmic kernel in order s") {
  const Grid g = build_grid(-0.5, 0.5, 16);
  QuadratureSpec spec = QuadratureSpec::defaults_for(1);
  spec.gauss_order = 8;
  const std::vector<double> s_list{0.2, 0.1, 0.05, 0.025};
  const auto rows = fractional_expansion_check(g, s_list, spec, 2);

  REQUIRE(rows.size() == s_list.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].s == s_list[i]);
    CHECK(rows[i].max_entry_error > 0.0);
  }
  // First-order convergence: halving s at least halves the defect (with a
  // small safety factor).
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    CHECK(rows[i + 1].max_entry_error <= 0.6 * rows[i].max_entry_error);
}

TEST_CASE("dilation law shifts the principal eigenvalue by -2 log 2") {
  const ScalingLawReport rep =
      scaling_law_check(16, 1.0 / 16.0, QuadratureSpec::defaults_for(1));
  CHECK(std::isfinite(rep.lambda1_base));
  CHECK(std::isfinite(rep.lambda1_scaled));
  CHECK(rep.defect ==
        doctest::Approx(std::abs(rep.lambda1_scaled -
                                 (rep.lambda1_base - 2.0 * std::log(2.0))))
            .epsilon(1e-13));
  CHECK(rep.defect <= 0.05 * std::max(1.0, std::abs(rep.lambda1_base)));
}

TEST_CASE("input validation") {
  const auto& K = kit();
  CHECK_THROWS_AS(dirichlet_spectrum(K.k, K.mass, {}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(dirichlet_spectrum(K.k, K.mass, {0, 0}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      dirichlet_spectrum(K.k, K.mass, {K.g.num_cells()}, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      fractional_expansion_check(K.g, {}, QuadratureSpec::defaults_for(1)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      fractional_expansion_check(K.g, {0.6}, QuadratureSpec::defaults_for(1)),
      std::invalid_argument);
  CHECK_THROWS_AS(scaling_law_check(0, 0.25, QuadratureSpec::defaults_for(1)),
                  std::invalid_argument);
}

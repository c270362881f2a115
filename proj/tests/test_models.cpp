#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <gtest/gtest.h>

#include <nhbloch/bloch.hpp>
#include <nhbloch/models.hpp>

#include "support/oracles.hpp"

using namespace nhbloch;
using namespace nhbloch::models;

namespace {

Lame2Params const tight = Lame2Params::from_m(0.999);

std::array<cplx, 2> sorted(std::array<cplx, 2> v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return v;
}

std::array<cplx, 2> solver_eigenvalues(Matrix2c const& h) {
  Eigen::ComplexEigenSolver<Matrix2c> es(h);
  return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

} // namespace

TEST(Lame2, PeriodOfTightWell) { EXPECT_NEAR(tight.a, 9.682, 1e-3); }

TEST(Lame2, CriticalFieldIsRelativeMaximum) {
  auto const r = boost::math::tools::brent_find_minima(
      [](double k) { return -lame2_beta_of_kI(k, tight); }, 0.01, 0.99, 40);
  EXPECT_NEAR(lame2_beta_c(tight), -r.second, 1e-6);
  EXPECT_NEAR(lame2_beta_c(tight), 0.5963, 2e-4);
}

TEST(Lame2, RootsRoundTrip) {
  oracle::Gen gen(11);
  for (int i = 0; i < 20; ++i) {
    double const beta = gen.uniform(0.05, 1.2);
    auto const roots = lame2_kI_roots(0.0, beta, tight);
    ASSERT_FALSE(roots.empty());
    for (double k : roots) EXPECT_NEAR(lame2_beta_of_kI(k, tight), beta, 1e-8) << beta;
  }
}

TEST(Lame2, RootCountDropsAtCriticalField) {
  double const bc = lame2_beta_c(tight);
  EXPECT_EQ(lame2_kI_roots(0.0, bc - 0.02, tight).size(), 3u);
  EXPECT_EQ(lame2_kI_roots(0.0, bc + 0.02, tight).size(), 1u);
}

TEST(Lame2, LargeMomentumRootApproachesField) {
  auto const roots = lame2_kI_roots(50.0, 0.4, tight);
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_NEAR(roots[0], 0.4, 1e-3);
}

TEST(Lame2, Errors) {
  EXPECT_THROW(lame2_beta_of_kI(1.0, tight), nhbloch::domain_error);
  EXPECT_THROW(lame2_beta_c(1.5), nhbloch::domain_error);
  EXPECT_THROW(lame2_kI_roots(0.0, -0.1, tight), nhbloch::domain_error);
}

TEST(Dirac, HamiltonianEntries) {
  DiracParams const p;
  auto const h = dirac_hamiltonian(0.6, 0.02, p);
  double const k0 = 0.5;
  cplx const q = 2.0 * k0 * cplx(0.6 - k0, -0.02);
  EXPECT_NEAR(std::abs(h(0, 0) - (0.25 + q)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(1, 1) - (0.25 - q)), 0.0, 1e-15);
  EXPECT_EQ(h(0, 1), cplx(0.05));
  EXPECT_EQ(h(1, 0), cplx(0.05));
}

TEST(Dirac, CriticalFieldAndGap) {
  DiracParams const p;
  EXPECT_NEAR(dirac_beta_c(p), 0.05, 1e-15);
  EXPECT_NEAR(dirac_gap_width(0.0, p).width, 0.1, 1e-15);
  EXPECT_TRUE(dirac_gap_width(0.051, p).closed);
  EXPECT_FALSE(dirac_gap_width(0.049, p).closed);
  auto const h = dirac_hamiltonian(p.k0(), 0.03, p);
  auto const ev = sorted(solver_eigenvalues(h));
  EXPECT_NEAR(std::abs(ev[1] - ev[0]), dirac_gap_width(0.03, p).width, 1e-12);
}

TEST(Dirac, PtPairing) {
  oracle::Gen gen(12);
  DiracParams const p;
  for (int i = 0; i < 20; ++i) {
    double const k = gen.uniform(0.3, 0.7), beta = gen.uniform(0.0, 0.1);
    auto const a = sorted(solver_eigenvalues(dirac_hamiltonian(k, beta, p)));
    auto b = solver_eigenvalues(dirac_hamiltonian(2.0 * p.k0() - k, beta, p));
    for (auto& e : b) e = std::conj(e);
    b = sorted(b);
    EXPECT_LT(std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])), 1e-12);
  }
}

TEST(Dirac, ClosedFormEigenvaluesMatchSolver) {
  oracle::Gen gen(13);
  for (int i = 0; i < 20; ++i) {
    Matrix2c h;
    h << gen.complex(1.0), gen.complex(1.0), gen.complex(1.0), gen.complex(1.0);
    auto const a = sorted(eigenvalues_2x2(h));
    auto const b = sorted(solver_eigenvalues(h));
    EXPECT_LT(std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])), 1e-12);
  }
}

TEST(Dirac, ExceptionalPoint) {
  auto const r = dirac_ep_check(DiracParams{});
  EXPECT_TRUE(r.defective);
  EXPECT_EQ(r.rank, 1);
  EXPECT_LT(r.nilpotency, 1e-15);
  EXPECT_LT(r.eigenvalue_error, 1e-12);
}

TEST(Dirac, MatchesFullSolverGapInShallowLattice) {
  DiracParams const p;
  bloch::BlochModel const model(make_mathieu(p.V0, p.a), 16);
  for (double beta : {0.0, 0.01, 0.02, 0.03, 0.04, 0.045}) {
    double const full = bloch::zone_edge_gap(model, beta, p.E1()).width;
    double const two_wave = dirac_gap_width(beta, p).width;
    EXPECT_NEAR(full, two_wave, 0.1 * two_wave) << beta;
  }
}

TEST(Dirac, Validation) {
  EXPECT_THROW(dirac_beta_c(DiracParams{0.0, 1.0}), nhbloch::domain_error);
  EXPECT_THROW(dirac_hamiltonian(0.1, 0.0, DiracParams{0.1, -1.0}), nhbloch::domain_error);
}

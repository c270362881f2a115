#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include <nhbloch/potential.hpp>

#include "support/oracles.hpp"

using namespace nhbloch;

TEST(Potential, MathieuValues) {
  auto const p = make_mathieu(1.0, 2.0 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(p.eval(0.0), 1.0);
  EXPECT_NEAR(p.eval(std::numbers::pi), -1.0, 1e-15);
}

TEST(Potential, LameAtQuarterPeriod) {
  auto const p = make_lame(2, 0.999);
  double const k = specfun::ellip_k(0.999);
  EXPECT_NEAR(p.period(), 2.0 * k, 1e-15);
  EXPECT_NEAR(p.eval(k), -0.002, 1e-12);
}

TEST(Potential, LameApproachesPoschlTellerWell) {
  auto const p = make_lame(2, 0.999);
  for (double x = -3.0; x <= 3.0; x += 0.05) EXPECT_NEAR(p.eval(x), poschl_teller_well(x, 2), 5e-3) << x;
}

// The well is -2(sigma^2-1)(sigma^2 + sech^2 x sinh^2 sigma x)/(...)^2: negative,
// with bound states at -sigma^2 and -1.
TEST(Potential, DoubleWellCenterValue) {
  auto const p = make_double_well(1.1, 10.0);
  EXPECT_NEAR(p.eval(0.0), -0.42, 1e-12);
}

TEST(Potential, DoubleWellIntegralMatchesBoundStates) {
  // reflectionless: integral of V over the line is -4 (kappa_1 + kappa_2) = -4 (1 + sigma)
  double const sigma = 1.1;
  auto f = [sigma](double x) { return detail::double_well_cell(x, sigma); };
  double const integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -30.0, 30.0, 20, 1e-12);
  EXPECT_NEAR(integral, -4.0 * (1.0 + sigma), 1e-8);
}

TEST(Potential, DoubleWellSeamJumpDecaysWithPeriod) {
  double prev = std::numeric_limits<double>::infinity();
  for (double a : {6.0, 8.0, 10.0, 12.0}) {
    double const jump = std::abs(detail::double_well_cell(a / 2, 1.1) - detail::double_well_cell(-a / 2, 1.1)) +
                        std::abs(detail::double_well_cell(a / 2, 1.1));
    EXPECT_LT(jump, prev);
    prev = jump;
  }
}

TEST(Potential, FreeIsZero) {
  auto const p = make_free(3.0);
  for (double x = -10.0; x < 10.0; x += 0.7) EXPECT_EQ(p.eval(x), 0.0);
}

TEST(Potential, ParameterValidation) {
  EXPECT_THROW(make_lame(1, 0.5), nhbloch::domain_error);
  EXPECT_THROW(make_lame(2, 1.0), nhbloch::domain_error);
  EXPECT_THROW(make_lame(2, 0.0), nhbloch::domain_error);
  EXPECT_THROW(make_double_well(1.0, 10.0), nhbloch::domain_error);
  EXPECT_THROW(make_mathieu(0.0, 1.0), nhbloch::domain_error);
  EXPECT_THROW(make_mathieu(1.0, -1.0), nhbloch::domain_error);
  EXPECT_THROW(potential_kind_from_string("square"), nhbloch::domain_error);
}

TEST(Potential, PeriodicityOnRandomPoints) {
  oracle::Gen gen(21);
  std::vector<Potential> const ps{make_lame(2, 0.999), make_lame(3, 0.8), make_double_well(1.1, 10.0),
                                  make_mathieu(1.0, 2.0 * std::numbers::pi)};
  for (auto const& p : ps)
    for (int i = 0; i < 200; ++i) {
      double const x = gen.uniform(-50.0, 50.0);
      EXPECT_NEAR(p.eval(x + p.period()), p.eval(x), 1e-12) << to_string(p.kind()) << " x = " << x;
    }
}

TEST(Potential, TabulatedInterpolatesNodesAndCosine) {
  int const n = 64;
  double const a = 3.0;
  std::vector<double> s(n);
  for (int j = 0; j < n; ++j) s[std::size_t(j)] = 0.5 + std::cos(2.0 * std::numbers::pi * 3.0 * j / n);
  auto const p = make_tabulated(s, a);
  for (int j = 0; j < n; ++j) EXPECT_NEAR(p.eval(a * j / n), s[std::size_t(j)], 1e-12);
  for (double x = 0.013; x < a; x += 0.1)
    EXPECT_NEAR(p.eval(x), 0.5 + std::cos(2.0 * std::numbers::pi * 3.0 * x / a), 1e-12);
}

TEST(Potential, TabulatedCsvReader) {
  std::stringstream good("x,V\n0,1\n0.5,2\n1,3\n1.5,4\n");
  auto const p = read_tabulated_csv(good);
  EXPECT_DOUBLE_EQ(p.period(), 2.0);
  EXPECT_NEAR(p.eval(0.5), 2.0, 1e-12);
  std::stringstream uneven("0,1\n0.5,2\n1.1,3\n1.5,4\n");
  EXPECT_THROW(read_tabulated_csv(uneven), nhbloch::domain_error);
  std::stringstream short_table("0,1\n1,2\n");
  EXPECT_THROW(read_tabulated_csv(short_table), nhbloch::domain_error);
}

TEST(Fourier, MathieuSingleHarmonic) {
  for (double v0 : {0.1, 1.0, 3.0}) {
    auto const c = fourier_coeffs(make_mathieu(v0, 2.0 * std::numbers::pi), 8, 128);
    for (int n = -8; n <= 8; ++n) {
      double const expect = std::abs(n) == 1 ? v0 / 2.0 : 0.0;
      EXPECT_NEAR(std::abs(c[n] - expect), 0.0, 1e-12) << n;
    }
  }
}

TEST(Fourier, FreeAllZero) {
  auto const c = fourier_coeffs(make_free(1.0), 5, 64);
  for (int n = -5; n <= 5; ++n) EXPECT_EQ(std::abs(c[n]), 0.0);
}

TEST(Fourier, LameMatchesFftAtFourTimesResolution) {
  auto const p = make_lame(2, 0.999);
  int const n_max = 64;
  auto const c = fourier_coeffs(p, n_max, 1024);
  auto const ref = oracle::fft_coefficients([&p](double x) { return p.eval(x); }, p.period(), 4096, n_max);
  for (int n = -n_max; n <= n_max; ++n) EXPECT_NEAR(std::abs(c[n] - ref[std::size_t(n + n_max)]), 0.0, 1e-9) << n;
}

TEST(Fourier, ConjugateSymmetryForAllBuiltins) {
  std::vector<Potential> const ps{make_lame(2, 0.999), make_double_well(1.1, 10.0),
                                  make_mathieu(1.0, 2.0 * std::numbers::pi), make_free(2.0)};
  for (auto const& p : ps) {
    auto const c = fourier_coeffs(p, 32, 512);
    for (int n = 0; n <= 32; ++n) EXPECT_EQ(c[-n], std::conj(c[n]));
    EXPECT_EQ(c[0].imag(), 0.0);
  }
}

TEST(Fourier, Parseval) {
  std::vector<Potential> const ps{make_lame(2, 0.999), make_double_well(1.1, 10.0), make_lame(3, 0.9)};
  for (auto const& p : ps) {
    int const n_max = 128;
    auto const c = fourier_coeffs(p, n_max, 2048);
    double sum = 0.0;
    for (int n = -n_max; n <= n_max; ++n) sum += std::norm(c[n]);
    double mean_sq = 0.0;
    int const q = 8192;
    for (int j = 0; j < q; ++j) mean_sq += std::pow(p.eval(p.period() * j / q), 2);
    mean_sq /= q;
    EXPECT_NEAR(sum, mean_sq, 1e-8) << to_string(p.kind());
  }
}

TEST(Fourier, RefusesUndersampledQuadrature) {
  EXPECT_THROW(fourier_coeffs(make_mathieu(1.0, 1.0), 16, 100), nhbloch::domain_error);
}

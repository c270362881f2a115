#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "potential.hpp"
#include "specfun.hpp"

namespace nhbloch::models {

// ---------------------------------------------------------------------------
// Lame N = 2 in the tight-well limit m -> 1, where each cell is a
// reflectionless well -2 sech^2 x and the Bloch waves are
// exp(-beta x) (-i k + tanh x) exp(i k x) with complex k = k_R - i k_I.

struct Lame2Params {
  double a = 0.0;  // period 2K(m)
  static Lame2Params from_m(double m) { return {2.0 * specfun::ellip_k(m)}; }
};

// beta as a function of k_I on the k_R = 0 branch (real energy E = -k_I^2).
inline double lame2_beta_of_kI(double kI, double a) {
  if (!(a > 0.0)) throw domain_error("lame2_beta_of_kI: period must be positive");
  if (kI == 1.0 || kI == -1.0) throw domain_error("lame2_beta_of_kI: singular at |k_I| = 1");
  return kI + std::log(std::abs((1.0 - kI) / (1.0 + kI))) / a;
}

// Relative maximum of beta(k_I), reached at k_I = sqrt(1 - 2/a).
inline double lame2_beta_c(double a) {
  if (!(a > 2.0)) throw domain_error("lame2_beta_c: requires a > 2");
  double const s = std::sqrt(1.0 - 2.0 / a);
  return s + std::log((1.0 - s) / (1.0 + s)) / a;
}

// Residual of exp[2(beta - k_I) a] = (k_R^2 + (1 - k_I)^2) / (k_R^2 + (1 + k_I)^2), in log form.
inline double lame2_condition(double kR, double kI, double beta, double a) {
  double const num = kR * kR + (1.0 - kI) * (1.0 - kI);
  double const den = kR * kR + (1.0 + kI) * (1.0 + kI);
  return 2.0 * (beta - kI) * a - std::log(num / den);
}

// Roots k_I >= 0 of the modulus condition for given k_R. Negative k_I roots
// sit within exp(-a) of k_I = -1, where tanh(a/2) = 1 no longer holds, and
// are not returned.
inline std::vector<double> lame2_kI_roots(double kR, double beta, double a, double tol = 1e-10) {
  if (!(a > 2.0)) throw domain_error("lame2_kI_roots: requires a > 2");
  if (!(beta >= 0.0)) throw domain_error("lame2_kI_roots: beta must be non-negative");
  auto f = [&](double kI) { return lame2_condition(kR, kI, beta, a); };
  double const lo = 0.0;
  double const hi = beta + 2.0;
  int const steps = 20000;
  std::vector<double> roots;
  double x0 = lo;
  double f0 = f(x0);
  for (int i = 1; i <= steps; ++i) {
    double const x1 = lo + (hi - lo) * double(i) / double(steps);
    double const f1 = f(x1);
    if (std::isfinite(f0) && std::isfinite(f1)) {
      if (f0 == 0.0) {
        roots.push_back(x0);
      } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
        double l = x0, r = x1, fl = f0;
        while (r - l > tol) {
          double const m = 0.5 * (l + r);
          double const fm = f(m);
          if ((fm < 0.0) == (fl < 0.0)) {
            l = m;
            fl = fm;
          } else {
            r = m;
          }
        }
        roots.push_back(0.5 * (l + r));
      }
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

inline double lame2_beta_of_kI(double kI, Lame2Params const& p) { return lame2_beta_of_kI(kI, p.a); }
inline double lame2_beta_c(Lame2Params const& p) { return lame2_beta_c(p.a); }
inline std::vector<double> lame2_kI_roots(double kR, double beta, Lame2Params const& p) {
  return lame2_kI_roots(kR, beta, p.a);
}

// ---------------------------------------------------------------------------
// Two-wave (Dirac) model of the first gap of the shallow Mathieu lattice
// V0 cos(2 pi x / a), valid near k = k0 = pi / a.

using Matrix2c = Eigen::Matrix2cd;

struct DiracParams {
  double V0 = 0.1;
  double a = 2.0 * std::numbers::pi;
  double k0() const { return std::numbers::pi / a; }
  double E1() const { return k0() * k0(); }
  double shallowness() const { return V0 / E1(); }  // small for the two-wave regime
};

inline void validate(DiracParams const& p) {
  if (!(p.V0 > 0.0)) throw domain_error("dirac: V0 must be positive");
  if (!(p.a > 0.0)) throw domain_error("dirac: period must be positive");
}

inline Matrix2c dirac_hamiltonian(double k, double beta, DiracParams const& p) {
  validate(p);
  double const k0 = p.k0();
  cplx const q = 2.0 * k0 * cplx(k - k0, -beta);
  Matrix2c h;
  h << p.E1() + q, p.V0 / 2.0, p.V0 / 2.0, p.E1() - q;
  return h;
}

// Field at which the first gap closes: beta_c = V0 / (4 k0) = V0 a / (4 pi).
inline double dirac_beta_c(DiracParams const& p) {
  validate(p);
  return p.V0 / (4.0 * p.k0());
}

struct DiracGap {
  double width = 0.0;
  bool closed = false;
};

// Real-axis gap at k = k0, the distance between the two real eigenvalues
// E1 +- sqrt((V0/2)^2 - 4 k0^2 beta^2); V0 at beta = 0, zero above beta_c.
inline DiracGap dirac_gap_width(double beta, DiracParams const& p) {
  validate(p);
  double const k0 = p.k0();
  double const disc = 0.25 * p.V0 * p.V0 - 4.0 * k0 * k0 * beta * beta;
  if (disc <= 0.0) return {0.0, true};
  return {2.0 * std::sqrt(disc), false};
}

// Closed-form eigenvalues of a 2x2 matrix; exact on a defective matrix whose
// discriminant vanishes in floating point.
inline std::array<cplx, 2> eigenvalues_2x2(Matrix2c const& h) {
  cplx const half_tr = 0.5 * (h(0, 0) + h(1, 1));
  cplx const half_diff = 0.5 * (h(0, 0) - h(1, 1));
  cplx const root = std::sqrt(half_diff * half_diff + h(0, 1) * h(1, 0));
  return {half_tr - root, half_tr + root};
}

struct ExceptionalPointReport {
  double nilpotency = 0.0;       // |(H - E1)^2|_F / |H - E1|_F^2
  int rank = 0;                  // numerical rank of H - E1
  std::array<cplx, 2> eigenvalues{};
  double eigenvalue_error = 0.0; // max |lambda - E1|
  bool defective = false;
};

// H at k = k0, beta = beta_c equals E1 I + (V0/2) [[-i, 1], [1, i]]: a
// nonzero nilpotent shift of E1 I.
inline ExceptionalPointReport dirac_ep_check(DiracParams const& p) {
  validate(p);
  Matrix2c const h = dirac_hamiltonian(p.k0(), dirac_beta_c(p), p);
  Matrix2c const n = h - p.E1() * Matrix2c::Identity();
  ExceptionalPointReport r;
  double const nn = n.norm();
  r.nilpotency = (n * n).norm() / (nn * nn);
  Eigen::JacobiSVD<Matrix2c> svd(n);
  auto const sv = svd.singularValues();
  double const eps = std::numeric_limits<double>::epsilon();
  r.rank = int(sv(0) > 0.0) + int(sv(1) > 16.0 * eps * sv(0));
  r.eigenvalues = eigenvalues_2x2(h);
  r.eigenvalue_error = std::max(std::abs(r.eigenvalues[0] - p.E1()), std::abs(r.eigenvalues[1] - p.E1()));
  r.defective = r.rank == 1 && r.nilpotency < 16.0 * eps;
  return r;
}

} // namespace nhbloch::models

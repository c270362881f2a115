#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace nhbloch::specfun {

// Parameter m of the elliptic functions, 0 <= m < 1.
class EllipticModulus {
public:
  explicit EllipticModulus(double m) : m_(m) {
    if (!(m >= 0.0 && m < 1.0))
      throw domain_error("elliptic modulus m must lie in [0, 1), got " + std::to_string(m));
  }
  double value() const noexcept { return m_; }

private:
  double m_;
};

namespace detail {

// Arithmetic-geometric mean of 1 and sqrt(1-m), keeping the c_n sequence for
// the Jacobi back-substitution.
struct AgmLadder {
  static constexpr int max_steps = 32;
  std::array<double, max_steps + 1> a{};
  std::array<double, max_steps + 1> c{};
  int steps = 0;
};

inline AgmLadder agm_ladder(double m) {
  AgmLadder l;
  double an = 1.0;
  double bn = std::sqrt(1.0 - m);
  double cn = std::sqrt(m);
  l.a[0] = an;
  l.c[0] = cn;
  while (std::abs(cn) > 1e-17 * an && l.steps < AgmLadder::max_steps) {
    double const a1 = 0.5 * (an + bn);
    double const b1 = std::sqrt(an * bn);
    cn = 0.5 * (an - bn);
    an = a1;
    bn = b1;
    ++l.steps;
    l.a[l.steps] = an;
    l.c[l.steps] = cn;
  }
  return l;
}

} // namespace detail

// Complete elliptic integral of the first kind, K(m) = pi / (2 AGM(1, sqrt(1-m))).
inline double ellip_k(EllipticModulus mod) {
  auto const l = detail::agm_ladder(mod.value());
  return std::numbers::pi / (2.0 * l.a[l.steps]);
}

inline double ellip_k(double m) { return ellip_k(EllipticModulus(m)); }

// Jacobi sn(x; m) by the descending AGM (Landen) recursion.
inline double jacobi_sn(double x, EllipticModulus mod) {
  if (!std::isfinite(x)) throw domain_error("jacobi_sn: non-finite argument");
  double const m = mod.value();
  if (m == 0.0) return std::sin(x);

  // reduce into one full period [-2K, 2K)
  double const quarter = ellip_k(mod);
  double const period = 4.0 * quarter;
  double xr = std::fmod(x, period);
  if (xr >= 2.0 * quarter) xr -= period;
  if (xr < -2.0 * quarter) xr += period;

  auto const l = detail::agm_ladder(m);
  double phi = std::ldexp(l.a[l.steps] * xr, l.steps);
  for (int n = l.steps; n > 0; --n)
    phi = 0.5 * (phi + std::asin(l.c[n] * std::sin(phi) / l.a[n]));
  return std::sin(phi);
}

inline double jacobi_sn(double x, double m) { return jacobi_sn(x, EllipticModulus(m)); }

} // namespace nhbloch::specfun

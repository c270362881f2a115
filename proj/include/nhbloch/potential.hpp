#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "specfun.hpp"

namespace nhbloch {

using cplx = std::complex<double>;

enum class PotentialKind { lame, double_well, mathieu, free, tabulated };

inline std::string_view to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::lame: return "lame";
    case PotentialKind::double_well: return "double_well";
    case PotentialKind::mathieu: return "mathieu";
    case PotentialKind::free: return "free";
    case PotentialKind::tabulated: return "tabulated";
  }
  return "?";
}

inline PotentialKind potential_kind_from_string(std::string_view s) {
  if (s == "lame") return PotentialKind::lame;
  if (s == "double_well" || s == "double-well") return PotentialKind::double_well;
  if (s == "mathieu") return PotentialKind::mathieu;
  if (s == "free") return PotentialKind::free;
  if (s == "tabulated") return PotentialKind::tabulated;
  throw domain_error("unknown potential kind '" + std::string(s) + "'");
}

struct LameParams {
  int N = 2;
  double m = 0.999;
};

struct DoubleWellParams {
  double sigma = 1.1;
  double a = 10.0;
};

struct MathieuParams {
  double V0 = 1.0;
  double a = 2.0 * std::numbers::pi;
};

struct FreeParams {
  double a = 2.0 * std::numbers::pi;
};

// One period of uniform samples x_j = j a / n, j = 0..n-1; evaluated between
// nodes by trigonometric interpolation.
struct TabulatedParams {
  std::vector<double> samples;
  double a = 1.0;
};

using PotentialParams =
    std::variant<LameParams, DoubleWellParams, MathieuParams, FreeParams, TabulatedParams>;

namespace detail {

// Reflectionless double well on a single cell, centered at x = 0. Bound
// states at -sigma^2 and -1; integral over the line is -4(1 + sigma).
inline double double_well_cell(double x, double sigma) {
  double const sh = std::sinh(sigma * x);
  double const sech = 1.0 / std::cosh(x);
  double const num = sigma * sigma + sech * sech * sh * sh;
  double const den = std::tanh(x) * sh - sigma * std::cosh(sigma * x);
  return -2.0 * (sigma * sigma - 1.0) * num / (den * den);
}

} // namespace detail

// Real periodic potential V(x + a) = V(x). Immutable after construction.
class Potential {
public:
  Potential(PotentialKind kind, PotentialParams params);

  PotentialKind kind() const noexcept { return kind_; }
  PotentialParams const& params() const noexcept { return params_; }
  double period() const noexcept { return period_; }

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;

  // Argument reduction to [-a/2, a/2).
  double reduce(double x) const noexcept {
    double r = std::fmod(x, period_);
    if (r >= 0.5 * period_) r -= period_;
    if (r < -0.5 * period_) r += period_;
    return r;
  }

private:
  PotentialKind kind_;
  PotentialParams params_;
  double period_ = 1.0;
  // tabulated: interpolation coefficients c_n, n = 0..n/2 (real-signal half spectrum)
  std::shared_ptr<std::vector<cplx> const> interp_;
};

inline Potential::Potential(PotentialKind kind, PotentialParams params)
    : kind_(kind), params_(std::move(params)) {
  switch (kind_) {
    case PotentialKind::lame: {
      auto const& p = std::get<LameParams>(params_);
      if (p.N < 2) throw domain_error("lame: N must be an integer >= 2");
      if (!(p.m > 0.0 && p.m < 1.0)) throw domain_error("lame: m must lie in (0, 1)");
      period_ = 2.0 * specfun::ellip_k(p.m);
      break;
    }
    case PotentialKind::double_well: {
      auto const& p = std::get<DoubleWellParams>(params_);
      if (!(p.sigma > 1.0)) throw domain_error("double_well: sigma must exceed 1");
      if (!(p.a > 0.0)) throw domain_error("double_well: period must be positive");
      if (p.a < 5.0)
        std::clog << "warning: double_well period a = " << p.a
                  << " is short; cell tails overlap noticeably\n";
      period_ = p.a;
      break;
    }
    case PotentialKind::mathieu: {
      auto const& p = std::get<MathieuParams>(params_);
      if (!(p.V0 > 0.0)) throw domain_error("mathieu: V0 must be positive");
      if (!(p.a > 0.0)) throw domain_error("mathieu: period must be positive");
      period_ = p.a;
      break;
    }
    case PotentialKind::free: {
      auto const& p = std::get<FreeParams>(params_);
      if (!(p.a > 0.0)) throw domain_error("free: period must be positive");
      period_ = p.a;
      break;
    }
    case PotentialKind::tabulated: {
      auto const& p = std::get<TabulatedParams>(params_);
      if (p.samples.size() < 4) throw domain_error("tabulated: need at least 4 samples");
      if (!(p.a > 0.0)) throw domain_error("tabulated: period must be positive");
      period_ = p.a;
      std::size_t const n = p.samples.size();
      auto coeffs = std::make_shared<std::vector<cplx>>(n / 2 + 1);
      for (std::size_t k = 0; k <= n / 2; ++k) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          double const ph = -2.0 * std::numbers::pi * double(k * j % n) / double(n);
          s += p.samples[j] * cplx(std::cos(ph), std::sin(ph));
        }
        (*coeffs)[k] = s / double(n);
      }
      interp_ = std::move(coeffs);
      break;
    }
  }
}

inline double Potential::eval(double x) const {
  double const xr = reduce(x);
  switch (kind_) {
    case PotentialKind::lame: {
      auto const& p = std::get<LameParams>(params_);
      double const sn = specfun::jacobi_sn(xr, p.m);
      return double(p.N * (p.N - 1)) * (p.m * sn * sn - 1.0);
    }
    case PotentialKind::double_well:
      return detail::double_well_cell(xr, std::get<DoubleWellParams>(params_).sigma);
    case PotentialKind::mathieu: {
      auto const& p = std::get<MathieuParams>(params_);
      return p.V0 * std::cos(2.0 * std::numbers::pi * xr / p.a);
    }
    case PotentialKind::free:
      return 0.0;
    case PotentialKind::tabulated: {
      auto const& c = *interp_;
      std::size_t const n = std::get<TabulatedParams>(params_).samples.size();
      double const t = 2.0 * std::numbers::pi * xr / period_;
      double v = c[0].real();
      for (std::size_t k = 1; k < c.size(); ++k) {
        // Nyquist term of an even-length table counts once, as a cosine
        double const w = (2 * k == n) ? 1.0 : 2.0;
        double const kt = double(k) * t;
        double const term = c[k].real() * std::cos(kt) - c[k].imag() * std::sin(kt);
        v += w * term;
      }
      return v;
    }
  }
  return 0.0;
}

inline Potential make_lame(int N, double m) { return {PotentialKind::lame, LameParams{N, m}}; }
inline Potential make_double_well(double sigma, double a) {
  return {PotentialKind::double_well, DoubleWellParams{sigma, a}};
}
inline Potential make_mathieu(double V0, double a) {
  return {PotentialKind::mathieu, MathieuParams{V0, a}};
}
inline Potential make_free(double a) { return {PotentialKind::free, FreeParams{a}}; }
inline Potential make_tabulated(std::vector<double> samples, double a) {
  return {PotentialKind::tabulated, TabulatedParams{std::move(samples), a}};
}

// Reference single-cell well -N(N-1)/cosh^2(x) approached by the Lame potential as m -> 1.
inline double poschl_teller_well(double x, int N) {
  double const c = std::cosh(x);
  return -double(N * (N - 1)) / (c * c);
}

// Two-column CSV (x, V) covering exactly one period with uniform spacing.
// A header line is skipped if it does not parse as numbers.
inline Potential read_tabulated_csv(std::istream& in) {
  std::vector<double> xs, vs;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (auto& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream ls(line);
    double x = 0.0, v = 0.0;
    if (!(ls >> x >> v)) {
      if (first) {
        first = false;
        continue;
      }
      throw domain_error("tabulated potential: malformed row '" + line + "'");
    }
    first = false;
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 4) throw domain_error("tabulated potential: need at least 4 rows");
  double const h = xs[1] - xs[0];
  if (!(h > 0.0)) throw domain_error("tabulated potential: x must increase");
  for (std::size_t j = 1; j < xs.size(); ++j)
    if (std::abs((xs[j] - xs[j - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h)) + 1e-12)
      throw domain_error("tabulated potential: non-uniform spacing at row " + std::to_string(j));
  return make_tabulated(std::move(vs), h * double(xs.size()));
}

inline Potential read_tabulated_csv(std::string const& path) {
  std::ifstream f(path);
  if (!f) throw domain_error("cannot open tabulated potential file '" + path + "'");
  return read_tabulated_csv(f);
}

// V_n for n = -n_max..n_max (energy units).
class FourierCoefficients {
public:
  FourierCoefficients(int n_max, std::vector<cplx> values)
      : n_max_(n_max), values_(std::move(values)) {}

  int n_max() const noexcept { return n_max_; }
  cplx operator[](int n) const { return values_.at(std::size_t(n + n_max_)); }
  std::vector<cplx> const& values() const noexcept { return values_; }

private:
  int n_max_;
  std::vector<cplx> values_;
};

// V_n = (1/a) int_0^a V(x) exp(-2 pi i n x / a) dx by the uniform trapezoid rule.
inline FourierCoefficients fourier_coeffs(Potential const& p, int n_max, int n_quad) {
  if (n_max < 0) throw domain_error("fourier_coeffs: n_max must be non-negative");
  if (n_quad < 8 * std::max(n_max, 1))
    throw domain_error("fourier_coeffs: n_quad = " + std::to_string(n_quad) +
                       " is below the oversampling floor 8*n_max = " +
                       std::to_string(8 * std::max(n_max, 1)));
  double const a = p.period();
  std::vector<double> samples(static_cast<std::size_t>(n_quad));
  for (int j = 0; j < n_quad; ++j) samples[std::size_t(j)] = p.eval(a * double(j) / double(n_quad));

  std::vector<cplx> twiddle(static_cast<std::size_t>(n_quad));
  for (int j = 0; j < n_quad; ++j) {
    double const ph = -2.0 * std::numbers::pi * double(j) / double(n_quad);
    twiddle[std::size_t(j)] = {std::cos(ph), std::sin(ph)};
  }

  std::vector<cplx> values(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = 0; n <= n_max; ++n) {
    cplx s = 0.0;
    for (int j = 0; j < n_quad; ++j)
      s += samples[std::size_t(j)] * twiddle[std::size_t((long(n) * j) % n_quad)];
    s /= double(n_quad);
    values[std::size_t(n_max + n)] = s;
    values[std::size_t(n_max - n)] = std::conj(s);
  }
  values[std::size_t(n_max)] = values[std::size_t(n_max)].real();
  return {n_max, std::move(values)};
}

} // namespace nhbloch

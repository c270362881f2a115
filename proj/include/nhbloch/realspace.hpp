#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "eig.hpp"
#include "errors.hpp"
#include "potential.hpp"

namespace nhbloch::realspace {

using eig::RealMatrix;

enum class Boundary { obc, pbc };

inline std::string_view to_string(Boundary b) { return b == Boundary::obc ? "obc" : "pbc"; }

inline Boundary boundary_from_string(std::string_view s) {
  if (s == "obc") return Boundary::obc;
  if (s == "pbc") return Boundary::pbc;
  throw domain_error("unknown boundary '" + std::string(s) + "'");
}

struct GridSpec {
  int cells = 8;               // M
  int points_per_cell = 128;   // P
  Boundary boundary = Boundary::obc;

  void validate() const {
    if (cells < 2) throw domain_error("grid: need at least 2 cells");
    if (points_per_cell < 32) throw domain_error("grid: need at least 32 points per cell");
  }
  double step(double period) const { return period / double(points_per_cell); }
  double length(double period) const { return period * double(cells); }
  // Unknowns: interior nodes x_j = j h, j = 1..MP-1 (obc) or j = 0..MP-1 (pbc).
  int dim() const {
    int const n = cells * points_per_cell;
    return boundary == Boundary::obc ? n - 1 : n;
  }
  double x(int j, double period) const {
    return step(period) * double(boundary == Boundary::obc ? j + 1 : j);
  }
};

namespace detail {

inline RealMatrix tridiagonal(Potential const& p, GridSpec const& g, double diag_shift, double upper,
                              double lower) {
  int const n = g.dim();
  double const h = g.step(p.period());
  RealMatrix m = RealMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    m(j, j) = 2.0 / (h * h) + diag_shift + p.eval(g.x(j, p.period()));
    if (j + 1 < n) {
      m(j, j + 1) = upper;
      m(j + 1, j) = lower;
    }
  }
  if (g.boundary == Boundary::pbc) {
    m(0, n - 1) = lower;
    m(n - 1, 0) = upper;
  }
  return m;
}

} // namespace detail

// -(d/dx + beta)^2 + V = -d^2 - 2 beta d - beta^2 + V with centered differences.
inline RealMatrix build_fd_hamiltonian(Potential const& p, double beta, GridSpec const& g) {
  g.validate();
  double const h = g.step(p.period());
  if (std::abs(beta) * h >= 1.0)
    throw domain_error("build_fd_hamiltonian: |beta| h = " + std::to_string(std::abs(beta) * h) +
                       " >= 1; refine the grid");
  return detail::tridiagonal(p, g, -beta * beta, -1.0 / (h * h) - beta / h, -1.0 / (h * h) + beta / h);
}

// D H_0 D^-1 with D = diag(exp(-beta x_j)), exactly similar to the beta = 0 matrix.
inline RealMatrix gauge_oracle_hamiltonian(Potential const& p, double beta, GridSpec const& g) {
  g.validate();
  if (g.boundary != Boundary::obc) throw domain_error("gauge_oracle_hamiltonian: OBC only");
  double const length = g.length(p.period());
  if (std::abs(beta) * length > 300.0)
    throw domain_error("gauge_oracle_hamiltonian: |beta| M a > 300 exceeds the exponent range");
  double const h = g.step(p.period());
  int const n = g.dim();
  std::vector<double> d(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) d[std::size_t(j)] = std::exp(-beta * g.x(j, p.period()));
  RealMatrix m = detail::tridiagonal(p, g, 0.0, -1.0 / (h * h), -1.0 / (h * h));
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j)
      m(i, j) *= d[std::size_t(i)] / d[std::size_t(j)];
  return m;
}

struct RealSpaceSpectrum {
  std::vector<cplx> values;      // sorted by real part
  eig::ComplexMatrix vectors;    // columns normalized, same order
  double max_imag = 0.0;
  double length = 0.0;           // M a
  GridSpec grid;
};

inline RealSpaceSpectrum fd_spectrum(Potential const& p, double beta, GridSpec const& g,
                                     bool with_vectors = true) {
  auto const m = build_fd_hamiltonian(p, beta, g);
  RealSpaceSpectrum out;
  out.grid = g;
  out.length = g.length(p.period());
  std::vector<cplx> vals;
  eig::ComplexMatrix vecs;
  if (with_vectors) {
    auto pairs = eig::eigenpairs(m);
    vals = std::move(pairs.values);
    vecs = std::move(pairs.vectors);
  } else {
    vals = eig::eigenvalues(m);
  }
  std::vector<std::size_t> order(vals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (vals[a].real() != vals[b].real()) return vals[a].real() < vals[b].real();
    return vals[a].imag() < vals[b].imag();
  });
  out.values.resize(vals.size());
  if (with_vectors) out.vectors.resize(vecs.rows(), vecs.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.values[i] = vals[order[i]];
    out.max_imag = std::max(out.max_imag, std::abs(vals[order[i]].imag()));
    if (with_vectors) out.vectors.col(Eigen::Index(i)) = vecs.col(Eigen::Index(order[i]));
  }
  return out;
}

inline RealSpaceSpectrum obc_spectrum(Potential const& p, double beta, GridSpec const& g,
                                      bool with_vectors = true) {
  if (g.boundary != Boundary::obc) throw domain_error("obc_spectrum: grid boundary must be obc");
  return fd_spectrum(p, beta, g, with_vectors);
}

struct SkinProfile {
  double center_of_mass = 0.0;
  double ipr = 0.0;
  double fitted_decay = 0.0;  // minus the slope of log(cell max |psi|) against x
  double fit_quality = 0.0;   // R^2 of that fit
};

inline SkinProfile skin_metrics(Eigen::Ref<Eigen::VectorXcd const> const& psi, GridSpec const& g,
                                double period) {
  g.validate();
  if (psi.size() != g.dim()) throw domain_error("skin_metrics: vector length does not match the grid");
  double norm = 0.0, first = 0.0, fourth = 0.0;
  for (Eigen::Index j = 0; j < psi.size(); ++j) {
    double const w = std::norm(psi(j));
    norm += w;
    first += g.x(int(j), period) * w;
    fourth += w * w;
  }
  if (!(norm > 0.0)) throw domain_error("skin_metrics: zero vector");
  SkinProfile s;
  s.center_of_mass = first / norm;
  s.ipr = fourth / (norm * norm);

  std::vector<double> xs, ys;
  for (int c = 0; c < g.cells; ++c) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < psi.size(); ++j) {
      double const x = g.x(int(j), period);
      if (x >= period * c && x < period * (c + 1)) m = std::max(m, std::abs(psi(j)));
    }
    if (m > 0.0) {
      xs.push_back(period * (double(c) + 0.5));
      ys.push_back(std::log(m));
    }
  }
  if (xs.size() >= 2) {
    double const n = double(xs.size());
    double const mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double const my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
      syy += (ys[i] - my) * (ys[i] - my);
    }
    double const slope = sxy / sxx;
    s.fitted_decay = -slope;
    s.fit_quality = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  }
  return s;
}

// CSV: x,re_psi,im_psi,abs_psi including the pinned end points for obc.
inline void write_eigenvector_csv(std::ostream& os, Eigen::Ref<Eigen::VectorXcd const> const& psi,
                                  GridSpec const& g, double period) {
  os << "x,re_psi,im_psi,abs_psi\n" << std::setprecision(17);
  auto row = [&os](double x, cplx v) {
    os << x << ',' << v.real() << ',' << v.imag() << ',' << std::abs(v) << '\n';
  };
  if (g.boundary == Boundary::obc) row(0.0, 0.0);
  for (Eigen::Index j = 0; j < psi.size(); ++j) row(g.x(int(j), period), psi(j));
  if (g.boundary == Boundary::obc) row(g.length(period), 0.0);
}

// CSV: band,re_e,im_e.
inline void write_spectrum_csv(std::ostream& os, std::vector<cplx> const& values) {
  os << "band,re_e,im_e\n" << std::setprecision(17);
  for (std::size_t i = 0; i < values.size(); ++i)
    os << i << ',' << values[i].real() << ',' << values[i].imag() << '\n';
}

} // namespace nhbloch::realspace

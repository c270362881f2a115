#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "eig.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "potential.hpp"

namespace nhbloch::bloch {

using eig::ComplexMatrix;

struct BlochConfig {
  int n_pw = 64;        // plane waves n = -n_pw..n_pw
  int k_points = 512;   // uniform grid on [-pi/a, pi/a)
  double beta = 0.0;    // imaginary gauge field
  std::optional<double> e_max_valid;  // defaults to ((2 pi / a) n_pw / 2)^2
  bool track = true;    // compute continuity-tracked bands

  void validate() const {
    if (n_pw < 8) throw domain_error("BlochConfig: n_pw must be >= 8");
    if (k_points < 64) throw domain_error("BlochConfig: k_points must be >= 64");
    if (!std::isfinite(beta)) throw domain_error("BlochConfig: beta must be finite");
    if (e_max_valid && !std::isfinite(*e_max_valid))
      throw domain_error("BlochConfig: e_max_valid must be finite");
  }
};

inline double default_e_max_valid(double period, int n_pw) {
  double const g = 2.0 * std::numbers::pi / period * double(n_pw) / 2.0;
  return g * g;
}

inline double e_max_valid(BlochConfig const& cfg, double period) {
  return cfg.e_max_valid.value_or(default_e_max_valid(period, cfg.n_pw));
}

// Plane-wave Hamiltonian H_nm = -(i k + 2 pi i n / a + beta)^2 delta_nm + V_{n-m}.
inline ComplexMatrix build_bloch_matrix(FourierCoefficients const& vn, double period, double k,
                                        double beta, int n_pw) {
  if (vn.n_max() < 2 * n_pw)
    throw domain_error("build_bloch_matrix: Fourier coefficients needed up to |n| = " +
                       std::to_string(2 * n_pw) + ", have " + std::to_string(vn.n_max()));
  int const dim = 2 * n_pw + 1;
  double const g0 = 2.0 * std::numbers::pi / period;
  ComplexMatrix h(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) h(i, j) = vn[i - j];
  for (int i = 0; i < dim; ++i) {
    int const n = i - n_pw;
    cplx const w = cplx(0.0, 1.0) * cplx(k + g0 * double(n)) + beta;
    h(i, i) += -(w * w);
  }
  return h;
}

// Same matrix at a complex wave number q and zero gauge field. With
// q = k - i beta this reproduces the real-k matrix entry by entry.
inline ComplexMatrix build_bloch_matrix(FourierCoefficients const& vn, double period, cplx q,
                                        int n_pw) {
  if (vn.n_max() < 2 * n_pw)
    throw domain_error("build_bloch_matrix: Fourier coefficients needed up to |n| = " +
                       std::to_string(2 * n_pw));
  int const dim = 2 * n_pw + 1;
  double const g0 = 2.0 * std::numbers::pi / period;
  ComplexMatrix h(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) h(i, j) = vn[i - j];
  for (int i = 0; i < dim; ++i) {
    int const n = i - n_pw;
    cplx const w = cplx(0.0, 1.0) * (q + g0 * double(n));
    h(i, i) += -(w * w);
  }
  return h;
}

inline FourierCoefficients bloch_coefficients(Potential const& p, int n_pw) {
  return fourier_coeffs(p, 2 * n_pw, 16 * n_pw);
}

inline ComplexMatrix build_bloch_matrix(Potential const& p, double k, double beta, int n_pw) {
  double const kmax = std::numbers::pi / p.period();
  if (std::abs(k) > kmax * (1.0 + 1e-12))
    throw domain_error("build_bloch_matrix: k outside the first Brillouin zone");
  return build_bloch_matrix(bloch_coefficients(p, n_pw), p.period(), k, beta, n_pw);
}

// Potential plus its Fourier table, shared by all k points of a sweep.
class BlochModel {
public:
  BlochModel(Potential p, int n_pw)
      : potential_(std::move(p)), n_pw_(n_pw), coeffs_(bloch_coefficients(potential_, n_pw)) {}

  Potential const& potential() const noexcept { return potential_; }
  double period() const noexcept { return potential_.period(); }
  int n_pw() const noexcept { return n_pw_; }
  int dim() const noexcept { return 2 * n_pw_ + 1; }
  FourierCoefficients const& coefficients() const noexcept { return coeffs_; }

  ComplexMatrix matrix(double k, double beta) const {
    return build_bloch_matrix(coeffs_, period(), k, beta, n_pw_);
  }
  std::vector<cplx> eigenvalues(double k, double beta) const {
    return eig::eigenvalues(matrix(k, beta));
  }
  std::vector<double> hermitian_eigenvalues(double k) const {
    return eig::hermitian_eigenvalues(matrix(k, 0.0));
  }
  eig::EigenPairs eigenpairs(double k, double beta) const {
    return eig::eigenpairs(matrix(k, beta));
  }

private:
  Potential potential_;
  int n_pw_;
  FourierCoefficients coeffs_;
};

// PBC spectrum over the Brillouin zone, eigenvalues kept below the validity ceiling.
struct SpectrumCurves {
  double period = 1.0;
  double beta = 0.0;
  double e_max_valid = std::numeric_limits<double>::infinity();
  std::vector<double> k;                  // ascending, [-pi/a, pi/a)
  std::vector<std::vector<cplx>> values;  // per k, sorted by (Re, Im)
  // tracked[b][i]: band b at k[i], continuity-matched between neighbouring k
  std::vector<std::vector<cplx>> tracked;
  // eigenvalues (filtered and sorted like `values`) at an arbitrary k; empty
  // when the curves were not produced by a solver
  std::function<std::vector<cplx>(double)> resample;

  std::size_t size() const noexcept { return k.size(); }
  std::size_t point_count() const noexcept {
    std::size_t n = 0;
    for (auto const& col : values) n += col.size();
    return n;
  }
};

namespace detail {

inline std::vector<cplx> filter_sort(std::vector<cplx> ev, double ceiling) {
  std::erase_if(ev, [ceiling](cplx e) { return !(e.real() < ceiling); });
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return ev;
}

// Greedy assignment by globally increasing distance.
inline std::vector<int> greedy_match(std::vector<cplx> const& prev, std::vector<cplx> const& next) {
  std::size_t const n = prev.size();
  struct Pair {
    double d;
    int i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n * next.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < next.size(); ++j)
      pairs.push_back({std::abs(prev[i] - next[j]), int(i), int(j)});
  std::sort(pairs.begin(), pairs.end(), [](Pair const& a, Pair const& b) {
    return a.d < b.d || (a.d == b.d && (a.i < b.i || (a.i == b.i && a.j < b.j)));
  });
  std::vector<int> match(n, -1);
  std::vector<bool> used(next.size(), false);
  std::size_t assigned = 0;
  for (auto const& p : pairs) {
    if (match[std::size_t(p.i)] >= 0 || used[std::size_t(p.j)]) continue;
    match[std::size_t(p.i)] = p.j;
    used[std::size_t(p.j)] = true;
    if (++assigned == n) break;
  }
  return match;
}

} // namespace detail

// Continuity tracking of the lowest n bands, n = smallest column size.
inline void track_bands(SpectrumCurves& curves) {
  curves.tracked.clear();
  if (curves.values.empty()) return;
  std::size_t nb = curves.values.front().size();
  for (auto const& col : curves.values) nb = std::min(nb, col.size());
  curves.tracked.assign(nb, std::vector<cplx>(curves.size()));
  std::vector<cplx> prev(curves.values.front().begin(),
                         curves.values.front().begin() + std::ptrdiff_t(nb));
  for (std::size_t b = 0; b < nb; ++b) curves.tracked[b][0] = prev[b];
  for (std::size_t i = 1; i < curves.size(); ++i) {
    std::vector<cplx> cand(curves.values[i].begin(), curves.values[i].begin() + std::ptrdiff_t(nb));
    auto const match = detail::greedy_match(prev, cand);
    for (std::size_t b = 0; b < nb; ++b) {
      prev[b] = cand[std::size_t(match[b])];
      curves.tracked[b][i] = prev[b];
    }
  }
}

inline std::vector<double> zone_grid(double period, int k_points) {
  std::vector<double> k(static_cast<std::size_t>(k_points));
  double const k0 = -std::numbers::pi / period;
  double const dk = 2.0 * std::numbers::pi / period / double(k_points);
  for (int i = 0; i < k_points; ++i) k[std::size_t(i)] = k0 + dk * double(i);
  return k;
}

// Spectrum under PBC from the plane-wave matrix at every k of the zone grid.
// Negative beta is reduced to |beta| by complex conjugation of the spectrum.
inline SpectrumCurves pbc_spectrum(std::shared_ptr<BlochModel const> model, BlochConfig const& cfg) {
  cfg.validate();
  if (cfg.n_pw != model->n_pw())
    throw domain_error("pbc_spectrum: config n_pw differs from the model cutoff");
  SpectrumCurves out;
  out.period = model->period();
  out.beta = cfg.beta;
  out.e_max_valid = e_max_valid(cfg, out.period);
  out.k = zone_grid(out.period, cfg.k_points);

  double const b = std::abs(cfg.beta);
  bool const mirror = cfg.beta < 0.0;
  double const ceiling = out.e_max_valid;
  auto solve = [model, b, mirror, ceiling](double k) {
    std::vector<cplx> ev;
    try {
      ev = model->eigenvalues(k, b);
    } catch (numerical_error const& e) {
      throw numerical_error("pbc_spectrum: eigensolver failed at k = " + std::to_string(k) +
                            ": " + e.what());
    }
    if (mirror)
      for (auto& e : ev) e = std::conj(e);
    return detail::filter_sort(std::move(ev), ceiling);
  };

  out.values.resize(out.k.size());
  parallel_for(out.k.size(), [&](std::size_t i) { out.values[i] = solve(out.k[i]); });
  out.resample = solve;
  if (cfg.track) track_bands(out);
  return out;
}

inline SpectrumCurves pbc_spectrum(Potential const& p, BlochConfig const& cfg) {
  cfg.validate();
  return pbc_spectrum(std::make_shared<BlochModel const>(p, cfg.n_pw), cfg);
}

struct BandInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool truncated = false;  // upper end cut at the validity ceiling
};

struct BandStructure {
  std::vector<BandInterval> bands;
  double e_max_valid = 0.0;

  // Edges E_0, E_1, ... in the usual order: every finite band contributes lo
  // and hi, the truncated top band only its lower end.
  std::vector<double> edges() const {
    std::vector<double> e;
    for (auto const& b : bands) {
      e.push_back(b.lo);
      if (!b.truncated) e.push_back(b.hi);
    }
    return e;
  }
};

// Hermitian-limit band intervals; adjacent bands separated by less than
// gap_tol are merged.
inline BandStructure band_intervals(Potential const& p, int n_pw, int k_points,
                                    double gap_tol = 1e-8) {
  BlochConfig cfg;
  cfg.n_pw = n_pw;
  cfg.k_points = k_points;
  cfg.validate();
  BlochModel const model(p, n_pw);
  double const ceiling = default_e_max_valid(p.period(), n_pw);
  // include +pi/a so that band extrema at the zone edge are seen from both sides
  auto grid = zone_grid(p.period(), k_points);
  grid.push_back(std::numbers::pi / p.period());

  std::vector<std::vector<double>> cols(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { cols[i] = model.hermitian_eigenvalues(grid[i]); });

  std::size_t const nb = cols.front().size();
  std::vector<BandInterval> raw;
  for (std::size_t b = 0; b < nb; ++b) {
    BandInterval iv{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), false};
    for (auto const& c : cols) {
      iv.lo = std::min(iv.lo, c[b]);
      iv.hi = std::max(iv.hi, c[b]);
    }
    if (iv.lo >= ceiling) break;
    if (iv.hi >= ceiling) {
      iv.hi = ceiling;
      iv.truncated = true;
    }
    raw.push_back(iv);
    if (iv.truncated) break;
  }

  BandStructure out;
  out.e_max_valid = ceiling;
  for (auto const& iv : raw) {
    if (!out.bands.empty() && iv.lo - out.bands.back().hi < gap_tol) {
      out.bands.back().hi = std::max(out.bands.back().hi, iv.hi);
      out.bands.back().truncated = out.bands.back().truncated || iv.truncated;
    } else {
      out.bands.push_back(iv);
    }
  }
  return out;
}

// Real-axis gap at the zone boundary k = -pi/a around `center`: the distance
// between the two eigenvalues nearest to it when both are real, zero once
// they have turned into a complex-conjugate pair.
struct ZoneEdgeGap {
  double width = 0.0;
  bool open = false;
  cplx lower, upper;
};

inline ZoneEdgeGap zone_edge_gap(BlochModel const& model, double beta, double center,
                                 double real_tol = 1e-9) {
  auto ev = model.eigenvalues(-std::numbers::pi / model.period(), std::abs(beta));
  std::sort(ev.begin(), ev.end(), [center](cplx a, cplx b) {
    return std::abs(a - center) < std::abs(b - center);
  });
  ZoneEdgeGap g;
  g.lower = ev[0];
  g.upper = ev[1];
  if (g.lower.real() > g.upper.real()) std::swap(g.lower, g.upper);
  double const scale = std::max(1.0, std::abs(center));
  g.open = std::abs(g.lower.imag()) < real_tol * scale && std::abs(g.upper.imag()) < real_tol * scale;
  g.width = g.open ? g.upper.real() - g.lower.real() : 0.0;
  return g;
}

// Smallest beta in [beta_lo, beta_hi] at which the zone-edge gap around
// `center` has closed, by bisection to `resolution`.
inline double zone_edge_gap_closing(BlochModel const& model, double center, double beta_lo,
                                    double beta_hi, double resolution = 1e-5) {
  if (!zone_edge_gap(model, beta_lo, center).open || zone_edge_gap(model, beta_hi, center).open)
    throw numerical_error("zone_edge_gap_closing: gap must be open at beta_lo and closed at beta_hi");
  while (beta_hi - beta_lo > resolution) {
    double const mid = 0.5 * (beta_lo + beta_hi);
    (zone_edge_gap(model, mid, center).open ? beta_lo : beta_hi) = mid;
  }
  return 0.5 * (beta_lo + beta_hi);
}

// CSV: k,band,re_e,im_e with 17 significant digits. Tracked bands come first
// (band = tracking index); eigenvalues beyond the tracked set follow with
// band = their rank in the sorted column.
inline void write_spectrum_csv(std::ostream& os, SpectrumCurves const& c) {
  os << "k,band,re_e,im_e\n";
  os << std::setprecision(17);
  std::size_t const nb = c.tracked.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t b = 0; b < nb; ++b)
      os << c.k[i] << ',' << b << ',' << c.tracked[b][i].real() << ',' << c.tracked[b][i].imag() << '\n';
    for (std::size_t r = nb; r < c.values[i].size(); ++r)
      os << c.k[i] << ',' << r << ',' << c.values[i][r].real() << ',' << c.values[i][r].imag() << '\n';
  }
}

} // namespace nhbloch::bloch

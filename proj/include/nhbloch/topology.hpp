#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "bloch.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "potential.hpp"

namespace nhbloch::topology {

using bloch::BlochConfig;
using bloch::BlochModel;
using bloch::SpectrumCurves;

// Orientation of the winding number: k runs from -pi/a to +pi/a. With this
// orientation the free particle at beta > 0 winds once counter-clockwise
// around base energies inside its parabola, W = +1.
inline constexpr int free_particle_winding_sign = +1;

struct WindingResult {
  int w = 0;
  double residual = 0.0;            // |total phase / 2 pi - w|
  double min_curve_distance = 0.0;  // closest sampled spectrum point to E_B
  int refinements = 0;              // k intervals that had to be subdivided
};

struct WindingOptions {
  double max_step_phase = std::numbers::pi / 2;  // refine above this increment
  int max_depth = 24;                            // bisection depth per interval
  double on_spectrum_factor = 2.0;  // on-spectrum if closer than factor * local spacing
};

namespace detail {

inline double wrap_pi(double x) {
  x = std::remainder(x, 2.0 * std::numbers::pi);
  return x;
}

// Sum of principal arguments; only differences modulo 2 pi are used, so the
// pairing of eigenvalues between columns never enters.
inline double phase_sum(std::vector<cplx> const& col, cplx eb) {
  double s = 0.0;
  for (auto const& e : col) s += std::arg(e - eb);
  return s;
}

// Distance from each point of column i to the nearest point of the neighbour
// columns (cyclic in k): the local sampling spacing along the curves.
inline std::vector<std::vector<double>> local_spacing(SpectrumCurves const& c) {
  std::size_t const nk = c.size();
  std::vector<std::vector<double>> s(nk);
  for (std::size_t i = 0; i < nk; ++i) {
    auto const& col = c.values[i];
    auto const& lft = c.values[(i + nk - 1) % nk];
    auto const& rgt = c.values[(i + 1) % nk];
    s[i].assign(col.size(), std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < col.size(); ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (auto const& e : lft) best = std::min(best, std::abs(e - col[j]));
      for (auto const& e : rgt) best = std::min(best, std::abs(e - col[j]));
      s[i][j] = best;
    }
  }
  return s;
}

} // namespace detail

// Spectral winding number of the whole PBC spectrum around E_B, from the
// phase of prod_j (E_j(k) - E_B) accumulated over the zone. Eigenvalues that
// cross the validity ceiling enter and leave the product; the principal
// phase jump there closes the open curve on the far right.
inline WindingResult winding_number(SpectrumCurves const& curves, cplx eb,
                                    WindingOptions const& opt = {}) {
  std::size_t const nk = curves.size();
  if (nk < 2) throw domain_error("winding_number: need at least two k points");
  if (!(eb.real() < curves.e_max_valid))
    throw domain_error("winding_number: E_B lies above the validity ceiling");

  WindingResult res;
  // on-spectrum test against the local sampling density
  {
    auto const spacing = detail::local_spacing(curves);
    double best = std::numeric_limits<double>::infinity();
    double best_spacing = 0.0;
    for (std::size_t i = 0; i < nk; ++i)
      for (std::size_t j = 0; j < curves.values[i].size(); ++j) {
        double const d = std::abs(curves.values[i][j] - eb);
        if (d < best) {
          best = d;
          best_spacing = spacing[i][j];
        }
      }
    res.min_curve_distance = best;
    if (best < opt.on_spectrum_factor * best_spacing)
      throw on_spectrum_error("winding_number: E_B = (" + std::to_string(eb.real()) + ", " +
                              std::to_string(eb.imag()) + ") lies on the sampled spectrum");
  }

  double const dk = 2.0 * std::numbers::pi / curves.period / double(nk);
  double total = 0.0;

  // phase increment over [k0, k1] with end phases p0, p1, subdividing as needed
  auto increment = [&](auto&& self, double k0, double k1, double p0, double p1, int depth) -> double {
    double const d = detail::wrap_pi(p1 - p0);
    if (std::abs(d) <= opt.max_step_phase) return d;
    if (!curves.resample)
      throw numerical_error("winding_number: phase step exceeds pi/2 and the curves cannot be resampled");
    if (depth >= opt.max_depth)
      throw numerical_error("winding_number: k refinement cap exceeded near k = " + std::to_string(k0));
    double const km = 0.5 * (k0 + k1);
    double const pm = detail::phase_sum(curves.resample(km), eb);
    return self(self, k0, km, p0, pm, depth + 1) + self(self, km, k1, pm, p1, depth + 1);
  };

  std::vector<double> phase(nk);
  for (std::size_t i = 0; i < nk; ++i) phase[i] = detail::phase_sum(curves.values[i], eb);
  for (std::size_t i = 0; i < nk; ++i) {
    std::size_t const j = (i + 1) % nk;  // the last step wraps to -pi/a = +pi/a
    double const k0 = curves.k[i];
    double const k1 = k0 + dk;
    double const d = detail::wrap_pi(phase[j] - phase[i]);
    if (std::abs(d) > opt.max_step_phase) {
      ++res.refinements;
      total += increment(increment, k0, k1, phase[i], phase[j], 0);
    } else {
      total += d;
    }
  }
  double const turns = total / (2.0 * std::numbers::pi);
  res.w = int(std::lround(turns));
  res.residual = std::abs(turns - double(res.w));
  return res;
}

// Transversal crossings of the real axis by the tracked curves, merged when
// closer than tol in energy.
inline int real_axis_crossings(SpectrumCurves const& curves, double tol = 1e-6) {
  if (curves.beta == 0.0)
    throw domain_error("real_axis_crossings: beta = 0 spectrum is entirely real");
  if (curves.tracked.empty())
    throw domain_error("real_axis_crossings: curves carry no band tracking");
  std::size_t const nk = curves.size();
  std::vector<double> found;
  for (auto const& band : curves.tracked) {
    // typical step along this band; larger jumps are tracking swaps, not motion
    std::vector<double> steps(nk);
    for (std::size_t i = 0; i < nk; ++i) steps[i] = std::abs(band[(i + 1) % nk] - band[i]);
    std::vector<double> sorted = steps;
    std::nth_element(sorted.begin(), sorted.begin() + std::ptrdiff_t(nk / 2), sorted.end());
    double const typical = sorted[nk / 2];

    auto sign_of = [](cplx e) {
      double const zero = 1e-10 * std::max(1.0, std::abs(e));
      return e.imag() > zero ? 1 : (e.imag() < -zero ? -1 : 0);
    };
    // walk once around the zone starting from a point off the real axis
    std::size_t start = nk;
    for (std::size_t i = 0; i < nk; ++i)
      if (sign_of(band[i]) != 0) {
        start = i;
        break;
      }
    if (start == nk) continue;  // band lies on the real axis
    int last_sign = sign_of(band[start]);
    std::size_t last_idx = start;
    for (std::size_t s = 1; s <= nk; ++s) {
      std::size_t const i = (start + s) % nk;
      int const sg = sign_of(band[i]);
      if (sg == 0) continue;
      if (sg != last_sign) {
        // every step between the two off-axis samples must be a continuous move
        bool continuous = true;
        for (std::size_t t = last_idx; t != i; t = (t + 1) % nk)
          if (steps[t] > 4.0 * typical + 1e-12) continuous = false;
        if (continuous) {
          std::size_t const between = (last_idx + 1) % nk;
          if (between != i) {
            found.push_back(band[between].real());  // sampled on the axis
          } else {
            cplx const e0 = band[last_idx];
            cplx const e1 = band[i];
            double const w = e0.imag() / (e0.imag() - e1.imag());
            found.push_back(e0.real() + w * (e1.real() - e0.real()));
          }
        }
      }
      last_sign = sg;
      last_idx = i;
    }
  }
  // At the PT-invariant momenta k = -pi/a and k = 0 the reduced-zone bands
  // meet on the real axis, so a real eigenvalue there is a crossing of the
  // extended curve even when no single tracked band changes sign.
  auto add_real = [&found](std::vector<cplx> const& col) {
    for (auto const& e : col)
      if (std::abs(e.imag()) <= 1e-8 * std::max(1.0, std::abs(e))) found.push_back(e.real());
  };
  add_real(curves.values.front());
  if (nk % 2 == 0)
    add_real(curves.values[nk / 2]);
  else if (curves.resample)
    add_real(bloch::detail::filter_sort(curves.resample(0.0), curves.e_max_valid));

  std::sort(found.begin(), found.end());
  int count = 0;
  for (std::size_t i = 0; i < found.size(); ++i)
    if (i == 0 || found[i] - found[i - 1] > tol) ++count;
  return count;
}

namespace detail {

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

} // namespace detail

// Connected components of the sampled spectrum under single linkage. With
// eps > 0 two points link when closer than eps; with eps <= 0 each point uses
// 3x its own sampling spacing, so dense low-energy loops and the sparse
// high-energy tail are both resolved.
inline int component_count(SpectrumCurves const& curves, double eps = 0.0) {
  struct Pt {
    cplx e;
    double r;
  };
  std::vector<Pt> pts;
  pts.reserve(curves.point_count());
  if (eps > 0.0) {
    for (auto const& col : curves.values)
      for (auto const& e : col) pts.push_back({e, eps});
  } else {
    auto const spacing = detail::local_spacing(curves);
    for (std::size_t i = 0; i < curves.size(); ++i)
      for (std::size_t j = 0; j < curves.values[i].size(); ++j)
        pts.push_back({curves.values[i][j], 3.0 * spacing[i][j]});
  }
  if (pts.empty()) return 0;
  std::sort(pts.begin(), pts.end(), [](Pt const& a, Pt const& b) { return a.e.real() < b.e.real(); });
  double rmax = 0.0;
  for (auto const& p : pts)
    if (std::isfinite(p.r)) rmax = std::max(rmax, p.r);

  detail::DisjointSet ds(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double const r = std::isfinite(pts[i].r) ? pts[i].r : rmax;
    for (std::size_t j = i + 1; j < pts.size() && pts[j].e.real() - pts[i].e.real() <= r; ++j)
      if (std::abs(pts[j].e - pts[i].e) <= r) ds.unite(i, j);
    for (std::size_t j = i; j-- > 0 && pts[i].e.real() - pts[j].e.real() <= r;)
      if (std::abs(pts[j].e - pts[i].e) <= r) ds.unite(i, j);
  }
  int n = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (ds.find(i) == i) ++n;
  return n;
}

enum class MergeCriterion { components, crossings };

struct CriticalScanOptions {
  MergeCriterion criterion = MergeCriterion::components;
  double resolution = 1e-3;  // absolute beta resolution
  double crossing_tol = 1e-6;
};

// Count that the scan bisects on, evaluated on a fresh PBC spectrum at beta.
inline int merge_count(std::shared_ptr<BlochModel const> const& model, BlochConfig cfg, double beta,
                       CriticalScanOptions const& opt = {}) {
  cfg.beta = beta;
  cfg.track = opt.criterion == MergeCriterion::crossings;
  auto const curves = bloch::pbc_spectrum(model, cfg);
  return opt.criterion == MergeCriterion::components ? component_count(curves)
                                                     : real_axis_crossings(curves, opt.crossing_tol);
}

// Bisection for the smallest beta at which the count has dropped to `target`.
inline double beta_critical_scan(Potential const& p, double beta_lo, double beta_hi, int target,
                                 BlochConfig cfg = {}, CriticalScanOptions const& opt = {}) {
  if (!(beta_lo < beta_hi)) throw domain_error("beta_critical_scan: need beta_lo < beta_hi");
  cfg.validate();
  auto const model = std::make_shared<BlochModel const>(p, cfg.n_pw);
  int const c_lo = merge_count(model, cfg, beta_lo, opt);
  int const c_hi = merge_count(model, cfg, beta_hi, opt);
  if (!(c_lo > target && c_hi <= target))
    throw numerical_error("beta_critical_scan: no transition to " + std::to_string(target) +
                          " in [" + std::to_string(beta_lo) + ", " + std::to_string(beta_hi) +
                          "] (counts " + std::to_string(c_lo) + ", " + std::to_string(c_hi) + ")");
  double lo = beta_lo, hi = beta_hi;
  while (hi - lo > opt.resolution) {
    double const mid = 0.5 * (lo + hi);
    if (merge_count(model, cfg, mid, opt) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Semi-infinite boundary conditions

// Monodromy of -psi'' + V psi = E psi over one period (beta = 0).
struct Monodromy {
  cplx trace;        // Floquet discriminant
  cplx multiplier;   // the multiplier of larger modulus
};

inline Monodromy monodromy(Potential const& p, cplx energy, double tol = 1e-12) {
  using state = std::array<double, 8>;
  namespace odeint = boost::numeric::odeint;
  auto rhs = [&p, energy](state const& y, state& dy, double x) {
    double const v = p.eval(x);
    cplx const q = v - energy;
    for (int s = 0; s < 2; ++s) {
      cplx const psi(y[4 * s + 0], y[4 * s + 1]);
      cplx const dpsi(y[4 * s + 2], y[4 * s + 3]);
      cplx const d2 = q * psi;
      dy[4 * s + 0] = dpsi.real();
      dy[4 * s + 1] = dpsi.imag();
      dy[4 * s + 2] = d2.real();
      dy[4 * s + 3] = d2.imag();
    }
  };
  state y{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0};
  double const a = p.period();
  double const h0 = a / 512.0;
  odeint::integrate_adaptive(
      odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<state>()), rhs, y, 0.0, a, h0);
  Monodromy m;
  m.trace = cplx(y[0], y[1]) + cplx(y[6], y[7]);
  cplx const half = 0.5 * m.trace;
  cplx const root = std::sqrt(half * half - 1.0);
  cplx const l1 = half + root;
  cplx const l2 = half - root;
  m.multiplier = std::abs(l1) >= std::abs(l2) ? l1 : l2;
  return m;
}

// The unique beta' >= 0 for which E lies on the PBC spectrum of H_beta', and
// the real Bloch wave number k' at which it does.
struct GaugeRoot {
  double beta_prime = 0.0;
  double k_prime = 0.0;
};

inline GaugeRoot gauge_root(Potential const& p, cplx energy) {
  auto const m = monodromy(p, energy);
  GaugeRoot g;
  g.beta_prime = std::max(0.0, std::log(std::abs(m.multiplier)) / p.period());
  g.k_prime = std::arg(m.multiplier) / p.period();
  return g;
}

// d(beta') = distance from E_B to the sampled PBC spectrum at gauge beta'.
inline std::vector<double> gauge_distance_profile(std::shared_ptr<BlochModel const> const& model,
                                                  cplx eb, std::vector<double> const& betas,
                                                  int k_points = 256) {
  std::vector<double> d(betas.size());
  auto const grid = bloch::zone_grid(model->period(), k_points);
  for (std::size_t b = 0; b < betas.size(); ++b) {
    double best = std::numeric_limits<double>::infinity();
    for (double k : grid)
      for (auto const& e : model->eigenvalues(k, betas[b])) best = std::min(best, std::abs(e - eb));
    d[b] = best;
  }
  return d;
}

struct EdgeClassification {
  bool is_in_sibc_spectrum = false;
  double beta_prime = 0.0;   // gauge field whose PBC curve passes through E_B
  double k_prime = 0.0;      // Bloch wave number on that curve
  double decay_rate = 0.0;   // beta - beta' for interior points
  bool boundary_flag = false;
  int winding = 0;           // W(E_B) at gauge beta; 0 when not evaluated
  bool winding_checked = false;
  double curve_mismatch = 0.0;  // |E_B - nearest plane-wave eigenvalue at (k', beta')|
};

struct SibcOptions {
  double boundary_tol = 1e-4;     // |beta' - beta| below this: E_B on the beta curve
  double mismatch_tol = 1e-6;     // plane-wave confirmation of the Floquet root
};

// Membership of E_B in the SIBC spectrum at gauge beta. If `curves_at_beta`
// is given, the verdict is cross-checked against W(E_B) != 0.
inline EdgeClassification classify_sibc(BlochModel const& model, double beta, cplx eb,
                                        SpectrumCurves const* curves_at_beta = nullptr,
                                        SibcOptions const& opt = {}) {
  if (!(beta > 0.0)) throw domain_error("classify_sibc: beta must be positive");
  auto const root = gauge_root(model.potential(), eb);
  EdgeClassification out;
  out.beta_prime = root.beta_prime;
  out.k_prime = root.k_prime;

  bool const below_ceiling =
      eb.real() < bloch::default_e_max_valid(model.period(), model.n_pw());
  if (root.beta_prime <= beta + opt.boundary_tol && below_ceiling) {
    auto const ev = model.eigenvalues(root.k_prime, root.beta_prime);
    double best = std::numeric_limits<double>::infinity();
    for (auto const& e : ev) best = std::min(best, std::abs(e - eb));
    out.curve_mismatch = best;
    if (best > opt.mismatch_tol * std::max(1.0, std::abs(eb)))
      throw numerical_error("classify_sibc: Floquet root beta' = " + std::to_string(root.beta_prime) +
                            " not confirmed by the plane-wave spectrum (mismatch " +
                            std::to_string(best) + ")");
  }

  if (std::abs(root.beta_prime - beta) <= opt.boundary_tol) {
    out.is_in_sibc_spectrum = true;
    out.boundary_flag = true;
    out.decay_rate = 0.0;
    return out;
  }
  out.is_in_sibc_spectrum = root.beta_prime < beta;
  out.decay_rate = out.is_in_sibc_spectrum ? beta - root.beta_prime : 0.0;

  if (curves_at_beta) {
    auto const wr = winding_number(*curves_at_beta, eb);
    out.winding = wr.w;
    out.winding_checked = true;
    if ((wr.w != 0) != out.is_in_sibc_spectrum)
      throw numerical_error("classify_sibc: verdict disagrees with W(E_B) = " + std::to_string(wr.w) +
                            " at beta' = " + std::to_string(root.beta_prime) +
                            "; spectrum resolution too coarse");
  }
  return out;
}

inline EdgeClassification classify_sibc(Potential const& p, double beta, cplx eb,
                                        BlochConfig const& cfg, bool check_winding = true) {
  auto const model = std::make_shared<BlochModel const>(p, cfg.n_pw);
  if (!check_winding) return classify_sibc(*model, beta, eb);
  BlochConfig c = cfg;
  c.beta = beta;
  c.track = false;
  auto const curves = bloch::pbc_spectrum(model, c);
  return classify_sibc(*model, beta, eb, &curves);
}

// ---------------------------------------------------------------------------
// Edge-state wave function

struct EdgeStateProfile {
  std::vector<double> x;
  std::vector<cplx> psi;       // normalized to max |psi| = 1
  double boundary_value = 0.0; // |psi(0)|
  double fitted_decay = 0.0;   // minus d log|psi| / dx fitted over the last 30% of the grid
  double residual = 0.0;       // |H_beta psi - E_B psi| / |psi| by finite differences
};

// Bloch function f(x) = exp(i k x) sum_n c_n exp(2 pi i n x / a).
class BlochFunction {
public:
  BlochFunction(double period, double k, Eigen::VectorXcd coeffs)
      : a_(period), k_(k), c_(std::move(coeffs)) {}
  cplx operator()(double x) const {
    int const n_pw = int(c_.size() / 2);
    double const g0 = 2.0 * std::numbers::pi / a_;
    cplx s = 0.0;
    cplx const step = std::polar(1.0, g0 * x);
    cplx ph = std::polar(1.0, (k_ - g0 * double(n_pw)) * x);
    for (Eigen::Index i = 0; i < c_.size(); ++i) {
      s += c_(i) * ph;
      ph *= step;
    }
    return s;
  }

private:
  double a_, k_;
  Eigen::VectorXcd c_;
};

namespace detail {

// least-squares slope of y against x
inline double fit_slope(std::vector<double> const& x, std::vector<double> const& y) {
  double const n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

// psi = A psi_1 + B psi_2 with psi_1 = f exp(-(beta - beta') x), psi_2 by
// reduction of order (anchored at x = a so that psi_2(0) != 0) and B chosen
// so that psi(0) = 0. The grid spans [0, periods * a] with
// points_per_period samples per period.
inline EdgeStateProfile edge_state_profile(BlochModel const& model, double beta, cplx eb,
                                           EdgeClassification const& cls, int periods = 12,
                                           int points_per_period = 256) {
  if (!cls.is_in_sibc_spectrum || cls.boundary_flag)
    throw domain_error("edge_state_profile: E_B must be an interior SIBC energy");
  if (periods < 4 || points_per_period < 16)
    throw domain_error("edge_state_profile: grid too coarse");
  double const a = model.period();
  double const bp = cls.beta_prime;

  auto pairs = model.eigenpairs(cls.k_prime, bp);
  std::size_t best = 0;
  for (std::size_t j = 1; j < pairs.values.size(); ++j)
    if (std::abs(pairs.values[j] - eb) < std::abs(pairs.values[best] - eb)) best = j;
  BlochFunction const f(a, cls.k_prime, pairs.vectors.col(Eigen::Index(best)));

  std::size_t const n = std::size_t(periods) * std::size_t(points_per_period) + 1;
  double const h = a / double(points_per_period);
  EdgeStateProfile out;
  out.x.resize(n);
  std::vector<cplx> fx(n);
  double fmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.x[i] = h * double(i);
    fx[i] = f(out.x[i]);
    fmax = std::max(fmax, std::abs(fx[i]));
  }

  // I(x) = int_0^x exp(-2 beta' s) / f(s)^2 ds, 5-point Gauss-Legendre per cell
  static constexpr std::array<double, 5> gl_x{-0.9061798459386640, -0.5384693101056831, 0.0,
                                              0.5384693101056831, 0.9061798459386640};
  static constexpr std::array<double, 5> gl_w{0.2369268850561891, 0.4786286704993665,
                                              0.5688888888888889, 0.4786286704993665,
                                              0.2369268850561891};
  std::vector<cplx> integral(n, 0.0);
  double fmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    cplx s = 0.0;
    for (std::size_t q = 0; q < 5; ++q) {
      double const xi = out.x[i] + 0.5 * h * (1.0 + gl_x[q]);
      cplx const fv = f(xi);
      fmin = std::min(fmin, std::abs(fv));
      s += gl_w[q] * std::exp(-2.0 * bp * xi) / (fv * fv);
    }
    integral[i + 1] = integral[i] + 0.5 * h * s;
  }
  for (auto const& v : fx) fmin = std::min(fmin, std::abs(v));
  if (fmin < 1e-6 * fmax)
    throw numerical_error("edge_state_profile: the Bloch function nearly vanishes (|f|min/|f|max = " +
                          std::to_string(fmin / fmax) +
                          "); the reduction-of-order integral would cross a zero");

  std::size_t const anchor = std::size_t(points_per_period);  // x = a
  std::vector<cplx> psi1(n), psi2(n);
  for (std::size_t i = 0; i < n; ++i) {
    psi1[i] = fx[i] * std::exp(-(beta - bp) * out.x[i]);
    psi2[i] = psi1[i] * (integral[i] - integral[anchor]);
  }
  if (std::abs(psi2[0]) < 1e-300)
    throw numerical_error("edge_state_profile: psi_2(0) vanishes, boundary condition degenerate");
  cplx const coef_b = -psi1[0] / psi2[0];
  out.psi.resize(n);
  double pmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.psi[i] = psi1[i] + coef_b * psi2[i];
    pmax = std::max(pmax, std::abs(out.psi[i]));
  }
  for (auto& v : out.psi) v /= pmax;
  out.boundary_value = std::abs(out.psi[0]);

  // decay: per-period maxima of |psi| over the last 30% of the grid
  {
    int const first_period = int(std::floor(0.7 * periods));
    std::vector<double> xs, ys;
    for (int c = first_period; c < periods; ++c) {
      double m = 0.0;
      for (std::size_t i = std::size_t(c) * std::size_t(points_per_period);
           i < std::size_t(c + 1) * std::size_t(points_per_period); ++i)
        m = std::max(m, std::abs(out.psi[i]));
      xs.push_back((double(c) + 0.5) * a);
      ys.push_back(std::log(m));
    }
    out.fitted_decay = xs.size() >= 2 ? -detail::fit_slope(xs, ys) : 0.0;
  }

  // residual with fourth-order centered differences on interior points
  {
    double num = 0.0, den = 0.0;
    auto const& p = model.potential();
    for (std::size_t i = 2; i + 2 < n; ++i) {
      cplx const d1 = (-out.psi[i + 2] + 8.0 * out.psi[i + 1] - 8.0 * out.psi[i - 1] + out.psi[i - 2]) / (12.0 * h);
      cplx const d2 = (-out.psi[i + 2] + 16.0 * out.psi[i + 1] - 30.0 * out.psi[i] + 16.0 * out.psi[i - 1] -
                       out.psi[i - 2]) / (12.0 * h * h);
      cplx const hpsi = -d2 - 2.0 * beta * d1 - beta * beta * out.psi[i] + p.eval(out.x[i]) * out.psi[i];
      num += std::norm(hpsi - eb * out.psi[i]);
      den += std::norm(out.psi[i]);
    }
    out.residual = std::sqrt(num / den);
  }
  return out;
}

} // namespace nhbloch::topology

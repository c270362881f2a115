// Acceptance criteria 1-12: one PASS/FAIL line each, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include <nhbloch/nhbloch.hpp>

#include "support/oracles.hpp"

using namespace nhbloch;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Check = std::function<Outcome()>;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bloch::BlochConfig config(double beta, int n_pw, int k_points, bool track = false) {
  bloch::BlochConfig c;
  c.n_pw = n_pw;
  c.k_points = k_points;
  c.beta = beta;
  c.track = track;
  return c;
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (auto const& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&x](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

cplx lowest(std::vector<cplx> const& v) {
  return *std::min_element(v.begin(), v.end(), [](cplx x, cplx y) { return x.real() < y.real(); });
}

std::string fmt(char const* f, auto... v) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, v...);
  return buf;
}

Outcome lame_band_edges() {
  auto const t0 = std::chrono::steady_clock::now();
  auto const e = bloch::band_intervals(make_lame(2, 0.999), 64, 512).edges();
  double const t = seconds_since(t0);
  if (e.size() < 3) return {false, "fewer than three band edges"};
  double const want[3] = {0.999 - 2.0, -1.0, -1.0 + 0.999};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(e[std::size_t(i)] - want[i]));
  return {worst < 5e-3 && t < 10.0,
          fmt("edges (%.5f, %.5f, %.5f), max error %.2e, %.1f s", e[0], e[1], e[2], worst, t)};
}

Outcome lame_critical_field() {
  double const closed_form = models::lame2_beta_c(models::Lame2Params::from_m(0.999));
  double const bc = topology::beta_critical_scan(make_lame(2, 0.999), 0.5, 0.7, 1, config(0.0, 32, 512));
  double const r1 = std::abs(bc - closed_form) / closed_form;
  double const r2 = std::abs(bc - 0.5963) / 0.5963;
  return {r1 < 0.02 && r2 < 0.02, fmt("scan %.4f, closed form %.4f, deviations %.2f%% / %.2f%%", bc,
                                      closed_form, 100 * r1, 100 * r2)};
}

Outcome double_well_brackets() {
  auto const model = std::make_shared<bloch::BlochModel const>(make_double_well(1.1, 10.0), 32);
  int n[3];
  double const betas[3] = {0.28, 0.31, 0.4};
  for (int i = 0; i < 3; ++i)
    n[i] = topology::component_count(bloch::pbc_spectrum(model, config(betas[i], 32, 512)));
  return {n[0] == 3 && n[1] == 2 && n[2] == 1, fmt("components %d, %d, %d at beta 0.28, 0.31, 0.4", n[0], n[1], n[2])};
}

Outcome mathieu_dirac() {
  models::DiracParams const prm;
  bloch::BlochModel const model(make_mathieu(prm.V0, prm.a), 32);
  double const bc = bloch::zone_edge_gap_closing(model, prm.E1(), 0.0, 0.2);
  double worst = 0.0;
  for (int i = 0; i <= 9; ++i) {
    double const beta = 0.005 * i;
    double const full = bloch::zone_edge_gap(model, beta, prm.E1()).width;
    double const two_wave = models::dirac_gap_width(beta, prm).width;
    worst = std::max(worst, std::abs(full - two_wave) / two_wave);
  }
  double const rc = std::abs(bc - 0.05) / 0.05;
  return {rc < 0.1 && worst < 0.1,
          fmt("closing %.5f (%.2f%% from 0.05), worst gap deviation %.2f%%", bc, 100 * rc, 100 * worst)};
}

Outcome mathieu_cascade() {
  auto const model = std::make_shared<bloch::BlochModel const>(make_mathieu(1.0, 2.0 * std::numbers::pi), 32);
  int n[3];
  double const betas[3] = {0.3, 0.6, 0.8};
  for (int i = 0; i < 3; ++i)
    n[i] = topology::component_count(bloch::pbc_spectrum(model, config(betas[i], 32, 512)));
  return {n[0] > 1 && n[1] == 1 && n[2] == 1, fmt("components %d, %d, %d at beta 0.3, 0.6, 0.8", n[0], n[1], n[2])};
}

realspace::GridSpec crystal() {
  realspace::GridSpec g;
  g.cells = 8;
  g.points_per_cell = 128;
  return g;
}

Outcome obc_reality() {
  auto const p = make_mathieu(1.0, 2.0 * std::numbers::pi);
  auto const s0 = realspace::obc_spectrum(p, 0.0, crystal(), false);
  auto const s = realspace::obc_spectrum(p, 0.4, crystal(), false);
  double diff = 0.0;
  for (std::size_t i = 0; i < 10; ++i) diff = std::max(diff, std::abs(s.values[i] - s0.values[i]));
  return {s.max_imag < 1e-8 && diff < 1e-3, fmt("max |Im E| %.2e, lowest-10 deviation %.2e", s.max_imag, diff)};
}

Outcome skin_effect() {
  auto const p = make_mathieu(1.0, 2.0 * std::numbers::pi);
  auto const g = crystal();
  bool ok = true;
  std::ostringstream d;
  for (double beta : {0.2, 0.3, 0.5}) {
    auto const s = realspace::obc_spectrum(p, beta, g, true);
    Eigen::Index const n = s.vectors.cols();
    double worst_com = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      worst_com = std::max(worst_com, realspace::skin_metrics(s.vectors.col(i), g, p.period()).center_of_mass);
    double worst_fit = 0.0;
    for (Eigen::Index i = n / 2 - 5; i <= n / 2 + 5; ++i) {
      double const f = realspace::skin_metrics(s.vectors.col(i), g, p.period()).fitted_decay;
      worst_fit = std::max(worst_fit, std::abs(f - beta) / beta);
    }
    ok = ok && worst_fit < 0.15 && worst_com < s.length / 2.0;
    d << fmt("%sbeta %.1f: decay error %.1f%%, max center %.2f of %.2f", d.tellp() > 0 ? "; " : "", beta, 100 * worst_fit, worst_com, s.length);
  }
  return {ok, d.str()};
}

Outcome winding_consistency() {
  auto const model = std::make_shared<bloch::BlochModel const>(make_lame(2, 0.999), 32);
  double const beta = 0.55;
  auto const curves = bloch::pbc_spectrum(model, config(beta, 32, 256));
  int checked = 0, skipped = 0, agree = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      cplx const eb(-1.4 + 1.6 * i / 19.0, -0.5 + 1.0 * j / 19.0);
      topology::WindingResult w;
      try {
        w = topology::winding_number(curves, eb);
      } catch (on_spectrum_error const&) {
        ++skipped;
        continue;
      }
      ++checked;
      worst = std::max(worst, w.residual);
      auto const cls = topology::classify_sibc(*model, beta, eb);
      if (cls.is_in_sibc_spectrum == (w.w != 0)) ++agree;
    }
  auto const free_curves = bloch::pbc_spectrum(make_free(2.0 * std::numbers::pi), config(0.5, 32, 256));
  int const wf = topology::winding_number(free_curves, cplx(-0.125, 0.0)).w;
  return {worst < 1e-6 && agree == checked && checked > 0 && std::abs(wf) == 1,
          fmt("%d/%d agree (%d on-spectrum skipped), worst residual %.1e, free particle w = %d", agree, checked,
              skipped, worst, wf)};
}

Outcome edge_roundtrip() {
  bloch::BlochModel const model(make_lame(2, 0.999), 32);
  cplx const eb = lowest(model.eigenvalues(0.2, 0.3));
  auto const cls = topology::classify_sibc(model, 0.55, eb);
  if (!cls.is_in_sibc_spectrum || cls.boundary_flag) return {false, "sampled energy not classified as interior"};
  auto const prof = topology::edge_state_profile(model, 0.55, eb, cls);
  double const expect = 0.55 - cls.beta_prime;
  double const slope_err = std::abs(prof.fitted_decay - expect) / expect;
  bool const ok = std::abs(cls.beta_prime - 0.3) < 1e-3 && slope_err < 0.1 && prof.residual < 1e-3;
  return {ok, fmt("beta' %.6f, decay %.4f vs %.4f, residual %.1e", cls.beta_prime, prof.fitted_decay, expect,
                  prof.residual)};
}

Outcome dirac_ep() {
  auto const r = models::dirac_ep_check(models::DiracParams{});
  double const eps = std::numeric_limits<double>::epsilon();
  return {r.nilpotency < 16 * eps && r.rank == 1 && r.eigenvalue_error < 1e-12,
          fmt("nilpotency %.1e, rank %d, eigenvalue error %.1e", r.nilpotency, r.rank, r.eigenvalue_error)};
}

Outcome large_beta_parabola() {
  double const beta = 2.0;
  auto const p = make_mathieu(1.0, 2.0 * std::numbers::pi);
  auto const c = bloch::pbc_spectrum(p, config(beta, 32, 512));
  double const mean = bloch::bloch_coefficients(p, 32)[0].real();
  double worst = 0.0;
  for (auto const& col : c.values)
    for (auto const& e : col) {
      double const kappa = -e.imag() / (2.0 * beta);
      worst = std::max(worst, std::abs(e.real() - (mean + kappa * kappa - beta * beta)) / (beta * beta));
    }
  return {worst < 0.05, fmt("worst deviation %.2f%% of beta^2", 100 * worst)};
}

Outcome property_suites() {
  oracle::Gen gen(2024);
  std::ostringstream d;
  bool ok = true;

  // PT conjugate pairing
  bloch::BlochModel const lame(make_lame(2, 0.999), 24);
  double const kmax = std::numbers::pi / lame.period();
  double pt = 0.0;
  for (int i = 0; i < 20; ++i) {
    double const k = gen.uniform(-kmax, kmax), beta = gen.uniform(0.0, 1.5);
    auto minus = lame.eigenvalues(-k, beta);
    for (auto& e : minus) e = std::conj(e);
    pt = std::max(pt, multiset_distance(lame.eigenvalues(k, beta), minus));
  }
  ok = ok && pt < 1e-8;
  d << fmt("PT %.1e; ", pt);

  // complexification identity, exact
  double identity = 0.0;
  for (int i = 0; i < 20; ++i) {
    double const k = gen.uniform(-kmax, kmax), beta = gen.uniform(-2.0, 2.0);
    auto const& vn = lame.coefficients();
    identity = std::max(identity, (bloch::build_bloch_matrix(vn, lame.period(), k, beta, 24) -
                                   bloch::build_bloch_matrix(vn, lame.period(), cplx(k, -beta), 24))
                                      .cwiseAbs()
                                      .maxCoeff());
  }
  ok = ok && identity == 0.0;
  d << fmt("identity %.1e; ", identity);

  // cutoff doubling
  double drift = 0.0;
  for (auto const& p : {make_lame(2, 0.999), make_mathieu(1.0, 2.0 * std::numbers::pi), make_double_well(1.1, 10.0)}) {
    auto const lo = bloch::band_intervals(p, 32, 64);
    auto const hi = bloch::band_intervals(p, 64, 64);
    auto const el = lo.edges(), eh = hi.edges();
    for (std::size_t i = 0; i < std::min(el.size(), eh.size()); ++i)
      if (el[i] < lo.e_max_valid / 4.0) drift = std::max(drift, std::abs(el[i] - eh[i]));
  }
  ok = ok && drift < 1e-6;
  d << fmt("cutoff drift %.1e; ", drift);

  // special functions against quadrature and inversion
  double sf = 0.0;
  for (int i = 0; i < 20; ++i) {
    double const m = gen.uniform(0.0, 0.999);
    double const kk = oracle::complete_k(m);
    sf = std::max(sf, std::abs(specfun::ellip_k(m) - kk) / kk);
    double const u = gen.uniform(0.0, kk);
    sf = std::max(sf, std::abs(specfun::jacobi_sn(u, m) - oracle::sn_by_inversion(u, m)));
  }
  ok = ok && sf < 1e-10;
  d << fmt("quadrature %.1e; ", sf);

  // Fourier coefficients against FFT
  auto const lp = make_lame(2, 0.999);
  auto const c = fourier_coeffs(lp, 64, 1024);
  auto const ref = oracle::fft_coefficients([&lp](double x) { return lp.eval(x); }, lp.period(), 4096, 64);
  double fft = 0.0;
  for (int n = -64; n <= 64; ++n) fft = std::max(fft, std::abs(c[n] - ref[std::size_t(n + 64)]));
  ok = ok && fft < 1e-9;
  d << fmt("FFT %.1e; ", fft);

  // phase-sum winding against the crossing rule on the free-particle parabola
  double const beta = 0.5;
  auto const curves = bloch::pbc_spectrum(make_free(2.0 * std::numbers::pi), config(beta, 16, 256));
  std::vector<cplx> parabola;
  for (int i = -4000; i <= 4000; ++i) {
    double const q = 2e-3 * i;
    parabola.push_back(cplx(q, -beta) * cplx(q, -beta));
  }
  int poly_mismatch = 0;
  for (int i = 0; i < 30; ++i) {
    cplx const eb(gen.uniform(-1.0, 3.0), gen.uniform(-2.0, 2.0));
    double dist = std::numeric_limits<double>::infinity();
    for (auto const& e : parabola) dist = std::min(dist, std::abs(e - eb));
    if (dist < 0.05) continue;
    if (topology::winding_number(curves, eb).w != oracle::polygon_winding(parabola, eb)) ++poly_mismatch;
  }
  ok = ok && poly_mismatch == 0;
  d << fmt("polygon mismatches %d; ", poly_mismatch);

  // eigenvalues against the characteristic polynomial
  double charpoly = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    eig::ComplexMatrix a(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = gen.complex(1.0);
    using C = std::complex<long double>;
    auto at = [&a](int i, int j) { return C(a(i, j)); };
    C const tr = at(0, 0) + at(1, 1) + at(2, 2);
    C const minors = at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0) + at(0, 0) * at(2, 2) - at(0, 2) * at(2, 0) +
                     at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1);
    C const det = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
                  at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
                  at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    std::vector<cplx> want;
    for (auto const& r : oracle::cubic_roots(-tr, minors, -det)) want.emplace_back(double(r.real()), double(r.imag()));
    charpoly = std::max(charpoly, multiset_distance(eig::eigenvalues(a), want));
  }
  ok = ok && charpoly < 1e-8;
  d << fmt("characteristic polynomial %.1e", charpoly);
  return {ok, d.str()};
}

} // namespace

int main() {
  std::vector<std::pair<std::string, Check>> const criteria{
      {"1 Lame band edges", lame_band_edges},
      {"2 Lame critical field", lame_critical_field},
      {"3 double-well merging brackets", double_well_brackets},
      {"4 Mathieu/Dirac consistency", mathieu_dirac},
      {"5 Mathieu cascade endpoint", mathieu_cascade},
      {"6 OBC reality and field independence", obc_reality},
      {"7 skin effect", skin_effect},
      {"8 winding quantization and SIBC consistency", winding_consistency},
      {"9 edge-state roundtrip", edge_roundtrip},
      {"10 Dirac exceptional point", dirac_ep},
      {"11 large-beta parabola", large_beta_parabola},
      {"12 property suites", property_suites},
  };
  int failures = 0;
  for (auto const& [name, check] : criteria) {
    auto const t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (std::exception const& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

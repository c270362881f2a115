#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bloch.hpp"
#include "errors.hpp"
#include "models.hpp"
#include "potential.hpp"
#include "realspace.hpp"
#include "topology.hpp"

namespace nhbloch::cli {

inline constexpr char const* version = "0.1.0";
inline constexpr int schema_version = 1;

enum ExitCode : int { ok = 0, usage = 2, domain = 3, numerical = 4 };

struct RunConfig {
  std::string subcommand;

  // potential
  std::string potential = "lame";
  int N = 2;
  double m = 0.999;
  double sigma = 1.1;
  std::optional<double> a;  // period; kind default when unset (Lame: 2K(m))
  double V0 = 1.0;
  std::string table;

  double beta = 0.0;

  // plane-wave solver
  int n_pw = 64;
  int k_points = 512;
  std::optional<double> e_max_valid;

  // real-space grid
  int cells = 8;
  int points_per_cell = 128;
  std::string boundary = "obc";

  std::string out_dir = ".";

  // base energies (winding, edge)
  bool grid = false;
  double eb_re = 0.0;
  double eb_im = 0.0;
  double re_min = -1.5, re_max = 0.5;
  double im_min = -0.5, im_max = 0.5;
  int n_re = 20, n_im = 20;
  bool classify = false;

  // merge
  double beta_lo = 0.3;
  double beta_hi = 0.8;
  int target = 1;
  std::string criterion = "components";
  double resolution = 1e-3;

  // merge-theory
  double kR = 0.0;

  // skin
  int mode = -1;  // eigenvector index for the CSV dump; -1 selects the middle of the spectrum

  // edge
  int periods = 12;
  int points_per_period = 256;

  // dirac
  int n_beta = 10;

  bool operator==(RunConfig const&) const = default;
};

using nlohmann::json;

inline json to_json(RunConfig const& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["potential"] = c.potential;
  j["N"] = c.N;
  j["m"] = c.m;
  j["sigma"] = c.sigma;
  j["a"] = c.a ? json(*c.a) : json(nullptr);
  j["V0"] = c.V0;
  j["table"] = c.table;
  j["beta"] = c.beta;
  j["n_pw"] = c.n_pw;
  j["k_points"] = c.k_points;
  j["e_max_valid"] = c.e_max_valid ? json(*c.e_max_valid) : json(nullptr);
  j["cells"] = c.cells;
  j["points_per_cell"] = c.points_per_cell;
  j["boundary"] = c.boundary;
  j["out_dir"] = c.out_dir;
  j["grid"] = c.grid;
  j["eb_re"] = c.eb_re;
  j["eb_im"] = c.eb_im;
  j["re_min"] = c.re_min;
  j["re_max"] = c.re_max;
  j["im_min"] = c.im_min;
  j["im_max"] = c.im_max;
  j["n_re"] = c.n_re;
  j["n_im"] = c.n_im;
  j["classify"] = c.classify;
  j["beta_lo"] = c.beta_lo;
  j["beta_hi"] = c.beta_hi;
  j["target"] = c.target;
  j["criterion"] = c.criterion;
  j["resolution"] = c.resolution;
  j["kR"] = c.kR;
  j["mode"] = c.mode;
  j["periods"] = c.periods;
  j["points_per_period"] = c.points_per_period;
  j["n_beta"] = c.n_beta;
  return j;
}

inline RunConfig from_json(json const& j) {
  RunConfig c;
  auto get = [&j](char const* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  auto get_opt = [&j](char const* key, std::optional<double>& field) {
    if (!j.contains(key)) return;
    if (j.at(key).is_null())
      field.reset();
    else
      field = j.at(key).get<double>();
  };
  static constexpr char const* known[] = {
      "subcommand", "potential", "N", "m", "sigma", "a", "V0", "table", "beta", "n_pw", "k_points",
      "e_max_valid", "cells", "points_per_cell", "boundary", "out_dir", "grid", "eb_re", "eb_im",
      "re_min", "re_max", "im_min", "im_max", "n_re", "n_im", "classify", "beta_lo", "beta_hi",
      "target", "criterion", "resolution", "kR", "mode", "periods", "points_per_period", "n_beta"};
  if (!j.is_object()) throw domain_error("config: top level must be a JSON object");
  for (auto const& [key, value] : j.items())
    if (std::find_if(std::begin(known), std::end(known), [&key](char const* k) { return key == k; }) ==
        std::end(known))
      throw domain_error("config: unknown key '" + key + "'");
  try {
    get("subcommand", c.subcommand);
    get("potential", c.potential);
    get("N", c.N);
    get("m", c.m);
    get("sigma", c.sigma);
    get_opt("a", c.a);
    get("V0", c.V0);
    get("table", c.table);
    get("beta", c.beta);
    get("n_pw", c.n_pw);
    get("k_points", c.k_points);
    get_opt("e_max_valid", c.e_max_valid);
    get("cells", c.cells);
    get("points_per_cell", c.points_per_cell);
    get("boundary", c.boundary);
    get("out_dir", c.out_dir);
    get("grid", c.grid);
    get("eb_re", c.eb_re);
    get("eb_im", c.eb_im);
    get("re_min", c.re_min);
    get("re_max", c.re_max);
    get("im_min", c.im_min);
    get("im_max", c.im_max);
    get("n_re", c.n_re);
    get("n_im", c.n_im);
    get("classify", c.classify);
    get("beta_lo", c.beta_lo);
    get("beta_hi", c.beta_hi);
    get("target", c.target);
    get("criterion", c.criterion);
    get("resolution", c.resolution);
    get("kR", c.kR);
    get("mode", c.mode);
    get("periods", c.periods);
    get("points_per_period", c.points_per_period);
    get("n_beta", c.n_beta);
  } catch (json::exception const& e) {
    throw domain_error(std::string("config: ") + e.what());
  }
  return c;
}

inline RunConfig read_config_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open config file '" + path + "'");
  try {
    return from_json(json::parse(in));
  } catch (json::parse_error const& e) {
    throw domain_error("config file '" + path + "': " + e.what());
  }
}

// Thrown for command-line problems; maps to exit code 2.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<std::string> const& subcommands() {
  static std::vector<std::string> const names{"spectrum", "winding", "skin", "edge",
                                              "merge", "merge-theory", "dirac", "bands"};
  return names;
}

namespace detail {

inline void add_options(CLI::App& app, RunConfig& c, std::string& config_path) {
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  app.add_option("--potential", c.potential, "lame | double_well | mathieu | free | tabulated");
  app.add_option("--N", c.N, "Lame order");
  app.add_option("--m", c.m, "Lame elliptic parameter");
  app.add_option("--sigma", c.sigma, "double-well parameter");
  app.add_option("--a", c.a, "lattice period (double_well, mathieu, free)");
  app.add_option("--V0", c.V0, "Mathieu amplitude / Dirac gap parameter");
  app.add_option("--table", c.table, "CSV file (x, V) for a tabulated potential");
  app.add_option("--beta", c.beta, "imaginary gauge field");
  app.add_option("--n-pw", c.n_pw, "plane-wave cutoff");
  app.add_option("--k-points", c.k_points, "Brillouin-zone samples");
  app.add_option("--e-max-valid", c.e_max_valid, "validity ceiling for eigenvalues");
  app.add_option("--M,--cells", c.cells, "unit cells of the finite crystal");
  app.add_option("--P,--points-per-cell", c.points_per_cell, "grid points per cell");
  app.add_option("--boundary", c.boundary, "obc | pbc");
  app.add_option("--out-dir", c.out_dir, "directory for output files");
  app.add_flag("--grid", c.grid, "use a rectangular base-energy grid");
  app.add_option("--eb-re", c.eb_re, "base energy, real part");
  app.add_option("--eb-im", c.eb_im, "base energy, imaginary part");
  app.add_option("--re-min", c.re_min);
  app.add_option("--re-max", c.re_max);
  app.add_option("--im-min", c.im_min);
  app.add_option("--im-max", c.im_max);
  app.add_option("--n-re", c.n_re);
  app.add_option("--n-im", c.n_im);
  app.add_flag("--classify", c.classify, "add the semi-infinite classification to winding output");
  app.add_option("--beta-lo", c.beta_lo);
  app.add_option("--beta-hi", c.beta_hi);
  app.add_option("--target", c.target, "count to reach in the merge scan");
  app.add_option("--criterion", c.criterion, "components | crossings");
  app.add_option("--resolution", c.resolution, "beta resolution of the merge scan");
  app.add_option("--kR", c.kR, "real part of the complex wave number (merge-theory)");
  app.add_option("--mode", c.mode, "eigenvector index to dump (skin)");
  app.add_option("--periods", c.periods, "edge-state grid length in periods");
  app.add_option("--points-per-period", c.points_per_period);
  app.add_option("--n-beta", c.n_beta, "beta samples (dirac)");
}

inline std::optional<std::string> prescan_config(std::vector<std::string> const& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw usage_error("--config requires a path");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

} // namespace detail

// args excludes the program name.
inline RunConfig parse_config(std::vector<std::string> const& args) {
  RunConfig c;
  if (auto path = detail::prescan_config(args)) c = read_config_file(*path);
  std::string const file_subcommand = c.subcommand;

  CLI::App app{"Non-Hermitian Bloch band toolkit", "nhbloch"};
  std::string config_path;
  detail::add_options(app, c, config_path);
  app.fallthrough();
  std::vector<CLI::App*> subs;
  for (auto const& name : subcommands()) subs.push_back(app.add_subcommand(name));
  if (file_subcommand.empty()) app.require_subcommand(1);
  else app.require_subcommand(0, 1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    throw usage_error(app.help());
  } catch (CLI::ParseError const& e) {
    throw usage_error(e.what());
  }
  for (auto* s : subs)
    if (s->parsed()) c.subcommand = s->get_name();
  if (std::find(subcommands().begin(), subcommands().end(), c.subcommand) == subcommands().end())
    throw usage_error("unknown subcommand '" + c.subcommand + "'");
  if (c.beta_lo >= c.beta_hi && c.subcommand == "merge")
    throw usage_error("--beta-lo must be below --beta-hi");
  if (c.grid && (c.re_min >= c.re_max || c.im_min >= c.im_max || c.n_re < 1 || c.n_im < 1))
    throw usage_error("empty base-energy grid");
  if (c.criterion != "components" && c.criterion != "crossings")
    throw usage_error("--criterion must be components or crossings");
  return c;
}

inline Potential make_potential(RunConfig const& c) {
  switch (potential_kind_from_string(c.potential)) {
    case PotentialKind::lame:
      if (c.a) throw domain_error("lame: the period follows from m; do not pass --a");
      return make_lame(c.N, c.m);
    case PotentialKind::double_well: return make_double_well(c.sigma, c.a.value_or(10.0));
    case PotentialKind::mathieu: return make_mathieu(c.V0, c.a.value_or(2.0 * std::numbers::pi));
    case PotentialKind::free: return make_free(c.a.value_or(2.0 * std::numbers::pi));
    case PotentialKind::tabulated:
      if (c.table.empty()) throw domain_error("tabulated potential requires --table");
      return read_tabulated_csv(c.table);
  }
  throw domain_error("unknown potential");
}

inline bloch::BlochConfig bloch_config(RunConfig const& c) {
  bloch::BlochConfig b;
  b.n_pw = c.n_pw;
  b.k_points = c.k_points;
  b.beta = c.beta;
  b.e_max_valid = c.e_max_valid;
  b.validate();
  return b;
}

inline realspace::GridSpec grid_spec(RunConfig const& c) {
  realspace::GridSpec g;
  g.cells = c.cells;
  g.points_per_cell = c.points_per_cell;
  g.boundary = realspace::boundary_from_string(c.boundary);
  g.validate();
  return g;
}

// Named artifacts produced by a run, kept in memory until the run succeeds.
struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;
  void add(std::string name, std::string content) { files.emplace_back(std::move(name), std::move(content)); }
};

namespace detail {

inline std::string dump(json const& j) { return j.dump(2) + "\n"; }

inline std::vector<cplx> base_energies(RunConfig const& c) {
  if (!c.grid) return {cplx(c.eb_re, c.eb_im)};
  std::vector<cplx> out;
  for (int i = 0; i < c.n_re; ++i)
    for (int j = 0; j < c.n_im; ++j) {
      double const re = c.n_re == 1 ? c.re_min : c.re_min + (c.re_max - c.re_min) * double(i) / double(c.n_re - 1);
      double const im = c.n_im == 1 ? c.im_min : c.im_min + (c.im_max - c.im_min) * double(j) / double(c.n_im - 1);
      out.emplace_back(re, im);
    }
  return out;
}

inline json classification_json(topology::EdgeClassification const& e) {
  return {{"in_sibc", e.is_in_sibc_spectrum}, {"boundary", e.boundary_flag},
          {"beta_prime", e.beta_prime},       {"k_prime", e.k_prime},
          {"decay_rate", e.decay_rate}};
}

inline void run_spectrum(RunConfig const& c, Artifacts& out) {
  auto const p = make_potential(c);
  auto const curves = bloch::pbc_spectrum(p, bloch_config(c));
  std::ostringstream os;
  bloch::write_spectrum_csv(os, curves);
  out.add("spectrum.csv", os.str());
  json summary = {{"period", p.period()},
                  {"beta", c.beta},
                  {"e_max_valid", curves.e_max_valid},
                  {"points", curves.point_count()},
                  {"components", topology::component_count(curves)}};
  if (c.beta != 0.0) summary["real_axis_crossings"] = topology::real_axis_crossings(curves);
  out.add("spectrum.json", dump(summary));
}

inline void run_winding(RunConfig const& c, Artifacts& out) {
  auto const p = make_potential(c);
  auto cfg = bloch_config(c);
  cfg.track = false;
  auto const model = std::make_shared<bloch::BlochModel const>(p, cfg.n_pw);
  auto const curves = bloch::pbc_spectrum(model, cfg);
  json arr = json::array();
  for (cplx eb : base_energies(c)) {
    json rec = {{"e_b_re", eb.real()}, {"e_b_im", eb.imag()}};
    try {
      auto const w = topology::winding_number(curves, eb);
      rec["on_spectrum"] = false;
      rec["w"] = w.w;
      rec["residual"] = w.residual;
      rec["min_curve_distance"] = w.min_curve_distance;
      rec["refinements"] = w.refinements;
      if (c.classify && c.beta > 0.0) {
        auto const cls = topology::classify_sibc(*model, c.beta, eb, &curves);
        rec.update(classification_json(cls));
      }
    } catch (on_spectrum_error const&) {
      rec["on_spectrum"] = true;
      rec["w"] = nullptr;
    }
    arr.push_back(std::move(rec));
  }
  out.add("winding.json", dump(arr));
}

inline void run_skin(RunConfig const& c, Artifacts& out) {
  auto const p = make_potential(c);
  auto const g = grid_spec(c);
  auto const s = realspace::fd_spectrum(p, c.beta, g, true);
  double const length = s.length;
  json modes = json::array();
  std::vector<double> decays;
  int favoured = 0;
  int const n = int(s.values.size());
  for (int i = 0; i < n; ++i) {
    auto const m = realspace::skin_metrics(s.vectors.col(i), g, p.period());
    modes.push_back({{"index", i},
                     {"re_e", s.values[std::size_t(i)].real()},
                     {"im_e", s.values[std::size_t(i)].imag()},
                     {"center_of_mass", m.center_of_mass},
                     {"ipr", m.ipr},
                     {"fitted_decay", m.fitted_decay},
                     {"fit_quality", m.fit_quality}});
    bool const fav = c.beta > 0.0 ? m.center_of_mass < 0.5 * length
                                  : (c.beta < 0.0 ? m.center_of_mass > 0.5 * length : true);
    favoured += fav ? 1 : 0;
  }
  int const pick = c.mode >= 0 ? c.mode : n / 2;
  if (pick >= n) throw domain_error("skin: --mode exceeds the number of eigenvectors");
  auto const chosen = realspace::skin_metrics(s.vectors.col(pick), g, p.period());
  json summary = {{"length", length},
                  {"beta", c.beta},
                  {"boundary", c.boundary},
                  {"max_imag", s.max_imag},
                  {"mode", pick},
                  {"center_of_mass", chosen.center_of_mass},
                  {"ipr", chosen.ipr},
                  {"fitted_decay", chosen.fitted_decay},
                  {"fit_quality", chosen.fit_quality},
                  {"modes_on_favoured_half", favoured},
                  {"mode_count", n},
                  {"modes", std::move(modes)}};
  out.add("skin.json", dump(summary));
  std::ostringstream vs;
  realspace::write_eigenvector_csv(vs, s.vectors.col(pick), g, p.period());
  out.add("skin_mode.csv", vs.str());
  std::ostringstream es;
  realspace::write_spectrum_csv(es, s.values);
  out.add("skin_spectrum.csv", es.str());
}

inline void run_edge(RunConfig const& c, Artifacts& out) {
  auto const p = make_potential(c);
  auto cfg = bloch_config(c);
  cfg.track = false;
  auto const model = std::make_shared<bloch::BlochModel const>(p, cfg.n_pw);
  auto const curves = bloch::pbc_spectrum(model, cfg);
  cplx const eb(c.eb_re, c.eb_im);
  auto const cls = topology::classify_sibc(*model, c.beta, eb, &curves);
  json rec = {{"e_b_re", eb.real()}, {"e_b_im", eb.imag()}, {"w", cls.winding}};
  rec.update(classification_json(cls));
  if (cls.is_in_sibc_spectrum && !cls.boundary_flag) {
    auto const prof = topology::edge_state_profile(*model, c.beta, eb, cls, c.periods, c.points_per_period);
    rec["residual"] = prof.residual;
    rec["fitted_decay"] = prof.fitted_decay;
    rec["boundary_value"] = prof.boundary_value;
    std::ostringstream os;
    os << "x,re_psi,im_psi,abs_psi\n" << std::setprecision(17);
    for (std::size_t i = 0; i < prof.x.size(); ++i)
      os << prof.x[i] << ',' << prof.psi[i].real() << ',' << prof.psi[i].imag() << ','
         << std::abs(prof.psi[i]) << '\n';
    out.add("edge_profile.csv", os.str());
  }
  out.add("edge.json", dump(rec));
}

inline void run_merge(RunConfig const& c, Artifacts& out) {
  auto const p = make_potential(c);
  auto cfg = bloch_config(c);
  topology::CriticalScanOptions opt;
  opt.criterion = c.criterion == "crossings" ? topology::MergeCriterion::crossings
                                             : topology::MergeCriterion::components;
  opt.resolution = c.resolution;
  double const bc = topology::beta_critical_scan(p, c.beta_lo, c.beta_hi, c.target, cfg, opt);
  json rec = {{"beta_c", bc}, {"criterion", c.criterion}, {"target", c.target},
              {"beta_lo", c.beta_lo}, {"beta_hi", c.beta_hi}, {"resolution", c.resolution}};
  if (p.kind() == PotentialKind::lame && c.N == 2) rec["lame2_beta_c"] = models::lame2_beta_c(p.period());
  out.add("merge.json", dump(rec));
}

inline void run_merge_theory(RunConfig const& c, Artifacts& out) {
  if (potential_kind_from_string(c.potential) != PotentialKind::lame || c.N != 2)
    throw domain_error("merge-theory applies to the Lame potential with N = 2");
  auto const prm = models::Lame2Params::from_m(specfun::EllipticModulus(c.m).value());
  json curve = json::array();
  for (int i = 1; i < 400; ++i) {
    double const kI = 3.0 * double(i) / 400.0;
    if (std::abs(kI - 1.0) < 1e-12) continue;
    curve.push_back({{"kI", kI}, {"beta", models::lame2_beta_of_kI(kI, prm)}});
  }
  json rec = {{"a", prm.a},
              {"beta_c", models::lame2_beta_c(prm)},
              {"beta", c.beta},
              {"kR", c.kR},
              {"kI_roots", models::lame2_kI_roots(c.kR, std::abs(c.beta), prm)},
              {"curve", std::move(curve)}};
  out.add("merge_theory.json", dump(rec));
}

inline void run_dirac(RunConfig const& c, Artifacts& out) {
  models::DiracParams prm;
  prm.V0 = c.V0;
  prm.a = c.a.value_or(2.0 * std::numbers::pi);
  double const bc = models::dirac_beta_c(prm);
  auto const full = std::make_shared<bloch::BlochModel const>(make_mathieu(prm.V0, prm.a), c.n_pw);
  json gaps = json::array();
  for (int i = 0; i <= c.n_beta; ++i) {
    double const b = 1.2 * bc * double(i) / double(std::max(1, c.n_beta));
    auto const g = models::dirac_gap_width(b, prm);
    auto const fg = bloch::zone_edge_gap(*full, b, prm.E1());
    gaps.push_back({{"beta", b}, {"width", g.width}, {"closed", g.closed}, {"full_solver_width", fg.width}});
  }
  auto const ep = models::dirac_ep_check(prm);
  json rec = {{"V0", prm.V0},
              {"a", prm.a},
              {"k0", prm.k0()},
              {"E1", prm.E1()},
              {"shallowness", prm.shallowness()},
              {"beta_c", bc},
              {"gap", std::move(gaps)},
              {"exceptional_point",
               {{"nilpotency", ep.nilpotency},
                {"rank", ep.rank},
                {"eigenvalue_error", ep.eigenvalue_error},
                {"defective", ep.defective}}}};
  out.add("dirac.json", dump(rec));
}

inline void run_bands(RunConfig const& c, Artifacts& out) {
  auto const p = make_potential(c);
  auto const bs = bloch::band_intervals(p, c.n_pw, c.k_points);
  json bands = json::array();
  for (auto const& b : bs.bands) bands.push_back({{"lo", b.lo}, {"hi", b.hi}, {"truncated", b.truncated}});
  out.add("bands.json", dump({{"period", p.period()},
                              {"e_max_valid", bs.e_max_valid},
                              {"edges", bs.edges()},
                              {"bands", std::move(bands)}}));
}

} // namespace detail

inline Artifacts execute(RunConfig const& c) {
  Artifacts out;
  if (c.subcommand == "spectrum") detail::run_spectrum(c, out);
  else if (c.subcommand == "winding") detail::run_winding(c, out);
  else if (c.subcommand == "skin") detail::run_skin(c, out);
  else if (c.subcommand == "edge") detail::run_edge(c, out);
  else if (c.subcommand == "merge") detail::run_merge(c, out);
  else if (c.subcommand == "merge-theory") detail::run_merge_theory(c, out);
  else if (c.subcommand == "dirac") detail::run_dirac(c, out);
  else if (c.subcommand == "bands") detail::run_bands(c, out);
  else throw usage_error("unknown subcommand '" + c.subcommand + "'");
  return out;
}

// Writes the artifacts and <subcommand>.meta.json into cfg.out_dir; files
// already written are removed if any write fails.
inline void write_outputs(RunConfig const& c, Artifacts const& a, double wall_time_s) {
  namespace fs = std::filesystem;
  fs::path const dir(c.out_dir);
  std::vector<fs::path> written;
  try {
    fs::create_directories(dir);
    auto write = [&](std::string const& name, std::string const& content) {
      fs::path const path = dir / name;
      written.push_back(path);
      std::ofstream f(path, std::ios::binary);
      f << content;
      if (!f) throw domain_error("cannot write '" + path.string() + "'");
    };
    json outputs = json::array();
    for (auto const& [name, content] : a.files) {
      write(name, content);
      outputs.push_back(name);
    }
    json meta = {{"version", version},
                 {"schema_version", schema_version},
                 {"subcommand", c.subcommand},
                 {"config", to_json(c)},
                 {"outputs", outputs},
                 {"wall_time_s", wall_time_s}};
    write(c.subcommand + ".meta.json", detail::dump(meta));
  } catch (...) {
    std::error_code ec;
    for (auto const& p : written) fs::remove(p, ec);
    throw;
  }
}

inline int main(int argc, char** argv, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  bool const help = std::find_if(args.begin(), args.end(), [](std::string const& s) {
                      return s == "-h" || s == "--help";
                    }) != args.end();
  try {
    auto const t0 = std::chrono::steady_clock::now();
    RunConfig const cfg = parse_config(args);
    Artifacts const a = execute(cfg);
    double const wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(cfg, a, wall);
    return ok;
  } catch (usage_error const& e) {
    if (help) {
      std::cout << e.what();
      return ok;
    }
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (on_spectrum_error const& e) {
    err << "numerical error: " << e.what() << "\n";
    return numerical;
  } catch (numerical_error const& e) {
    err << "numerical error: " << e.what() << "\n";
    return numerical;
  } catch (domain_error const& e) {
    err << "domain error: " << e.what() << "\n";
    return domain;
  } catch (std::exception const& e) {
    err << "error: " << e.what() << "\n";
    return numerical;
  }
}

} // namespace nhbloch::cli

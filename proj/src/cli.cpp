#include "tripod/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <cmath>
#include <iostream>
#include <numbers>

#include "tripod/bands.hpp"
#include "tripod/compare.hpp"
#include "tripod/config.hpp"
#include "tripod/errors.hpp"
#include "tripod/io.hpp"
#include "tripod/optical.hpp"
#include "tripod/parallel.hpp"
#include "tripod/realspace.hpp"
#include "tripod/scatter.hpp"
#include "tripod/tightbinding.hpp"
#include "tripod/wannier.hpp"

#ifndef TRIPOD_VERSION
#define TRIPOD_VERSION "dev"
#endif

namespace tripod {

namespace {

using Clock = std::chrono::steady_clock;
using std::numbers::pi;

struct Common {
  std::string config;
  std::string out;
};

LatticeParams load(const Common& c) { return c.config.empty() ? validate(LatticeParams{}) : load_config(c.config); }

void emit(const std::string& command, const LatticeParams& p, const std::string& out, const std::string& content,
          Clock::time_point start, nlohmann::json grids = nlohmann::json::object(),
          nlohmann::json extra = nlohmann::json::object()) {
  write_atomic(out, content);
  RunManifest m;
  m.command = command;
  m.params = p;
  m.grids = std::move(grids);
  m.extra = std::move(extra);
  m.version = TRIPOD_VERSION;
  m.duration_s = std::chrono::duration<double>(Clock::now() - start).count();
  m.digests[std::filesystem::path(out).filename().string()] = sha256_hex(content);
  write_atomic(manifest_path(out), m.to_json().dump(2) + "\n");
}

nlohmann::json basis_grids(const LatticeParams& p) {
  return {{"n_harmonics", p.n_harmonics}, {"n_q", p.n_q}, {"n_x", p.n_x}, {"n_bands", p.n_bands}};
}

void cmd_potentials(const Common& c, int samples) {
  const auto start = Clock::now();
  const auto p = load(c);
  const int n = samples > 0 ? samples : p.n_x;
  CsvBuilder csv({"x", "omega1", "omega2", "omega3", "theta", "phi", "c1", "c2", "a_y", "v11", "v12", "v22",
                  "v_exact", "v_approx"});
  for (int i = 0; i < n; ++i) {
    const double x = p.a * i / n;
    const auto f = optics::rabi(x, p);
    const auto m = optics::angles(x, p);
    const auto g = optics::geometric_potentials(x, p);
    const auto b = optics::barrier_approx(x, p);
    csv.cell(x).cell(f.omega1).cell(f.omega2).cell(f.omega3).cell(m.theta).cell(m.phi).cell(g.c1).cell(g.c2);
    csv.cell(g.a_y).cell(g.v_mat(0, 0)).cell(g.v_mat(0, 1)).cell(g.v_mat(1, 1)).cell(b.exact).cell(b.approx);
    csv.end_row();
  }
  emit("potentials", p, c.out, csv.str(), start, {{"samples", n}},
       {{"gamma0", optics::gamma0(p).value}, {"eps_tilde", p.eps_tilde()}});
}

void cmd_bands(const Common& c, const std::string& method, bool track, double weight_max, int threads) {
  const auto start = Clock::now();
  const auto p = load(c);
  BandOptions opt;
  opt.track = track;
  opt.excited_weight_max = weight_max;
  opt.threads = threads;
  const auto set = solve_bands(method_from_string(method), p, opt);
  const auto frames = frame_grid(p, p.n_x);
  CsvBuilder csv({"q", "s", "E_re", "E_im", "pop_D1", "pop_D2", "pop_B", "pop_0"});
  for (int iq = 0; iq < set.n_q(); ++iq)
    for (int s = 1; s <= set.n_bands(); ++s) {
      const auto pop = populations(set.state(iq, s), frames);
      const auto e = set.energies(iq, s - 1);
      csv.cell(set.q_grid[static_cast<std::size_t>(iq)]).cell(s).cell(e.real()).cell(e.imag());
      csv.cell(pop.d1).cell(pop.d2).cell(pop.bright).cell(pop.excited);
      csv.end_row();
    }
  emit("bands", p, c.out, csv.str(), start, basis_grids(p),
       {{"method", method}, {"track", track}, {"excited_weight_max", weight_max}});
}

void cmd_scatter(const Common& c, double qmax_pi, int nq, bool approx, bool reduced, int threads) {
  const auto start = Clock::now();
  const auto p = load(c);
  ScatterOptions opt;
  opt.gamma0_approx = approx;
  opt.threads = threads;
  const auto grid = uniform_Q_grid(qmax_pi * pi, nq);
  const auto set = reduced ? reduced_dispersion_alpha0(p, grid, opt) : dispersion(p, grid, opt);
  CsvBuilder csv({"Q", "E", "q", "branch", "lambda_mod"});
  for (const auto& pt : set.points) {
    csv.cell(pt.Q).cell(pt.E).cell(pt.q).cell(pt.branch).cell(pt.lambda_mod);
    csv.end_row();
  }
  emit("scatter", p, c.out, csv.str(), start, {{"qmax", qmax_pi * pi}, {"n_Q", nq}},
       {{"gamma0", set.gamma0}, {"eps_tilde", set.eps_tilde}, {"branches", set.n_branches},
        {"evanescent", set.evanescent}, {"reduced", reduced}, {"gamma0_approx", approx}});
}

void cmd_wannier(const Common& c, int band, int center, const std::string& method, const std::string& threshold,
                 bool adiabatic, int ppa, int threads) {
  const auto start = Clock::now();
  auto p = load(c);
  p.n_bands = std::max(p.n_bands, band);
  WannierOptions wo;
  wo.method = wannier_method_from_string(method);
  wo.lambda_alpha_threshold = parse_angle(threshold);
  wo.points_per_a = ppa;
  BandOptions bo;
  bo.threads = threads;
  WannierFunction w;
  if (adiabatic) {
    w = adiabatic_wannier(dark_bands(p, bo), band, center, wo);
  } else {
    w = build_wannier(full_bands(p, bo), band, center, wo);
  }
  CsvBuilder csv({"x", "ReW_D1", "ImW_D1", "ReW_D2", "ImW_D2", "ReW_B", "ImW_B", "ReW_0", "ImW_0"});
  for (int m = 0; m < w.size(); ++m) {
    csv.cell(w.x(m));
    for (int k = 0; k < 4; ++k) {
      const auto v = k < w.components.cols() ? w.components(m, k) : std::complex<double>(0.0);
      csv.cell(v.real()).cell(v.imag());
    }
    csv.end_row();
  }
  emit("wannier", p, c.out, csv.str(), start, basis_grids(p),
       {{"band", band}, {"center", center}, {"method", to_string(w.method)}, {"adiabatic", adiabatic},
        {"shift_sign", w.shift_sign}, {"norm", w.norm()}, {"x_center", w.x_center}});
}

void cmd_tb(const Common& c, int band, const std::string& sweep, const std::string& from, const std::string& to,
            int steps, const std::string& method, int vmax, int threads) {
  const auto start = Clock::now();
  auto p = load(c);
  p.n_bands = std::max(p.n_bands, band);
  SweepOptions so;
  so.method = method_from_string(method);
  so.v_max = vmax;
  so.bands.threads = threads;
  const TightBindingTable table = [&] {
    if (sweep == "none") {
      TightBindingTable t;
      t.band = band;
      t.values = {0.0};
      BandOptions bo = so.bands;
      bo.vectors = false;
      t.fits = {extract_J(solve_bands(so.method, p, bo), band, vmax)};
      return t;
    }
    if (steps < 2) throw ValidationError("--steps must be >= 2");
    const bool alpha = sweep == "alpha";
    if (!alpha && sweep != "delta") throw ValidationError("--sweep must be alpha, delta or none");
    const double lo = alpha ? parse_angle(from) : std::stod(from);
    const double hi = alpha ? parse_angle(to) : std::stod(to);
    std::vector<double> values;
    for (int i = 0; i < steps; ++i) values.push_back(lo + (hi - lo) * i / (steps - 1));
    return alpha ? sweep_alpha(p, values, band, so) : sweep_delta(p, values, band, so);
  }();
  CsvBuilder csv({"param", "s", "v", "J_re", "J_im", "residual"});
  for (std::size_t i = 0; i < table.values.size(); ++i)
    for (Eigen::Index v = 0; v < table.fits[i].J.size(); ++v) {
      csv.cell(table.values[i]).cell(band).cell(static_cast<long long>(v));
      csv.cell(table.fits[i].J(v).real()).cell(table.fits[i].J(v).imag()).cell(table.fits[i].residual);
      csv.end_row();
    }
  nlohmann::json extra = {{"sweep", sweep}, {"method", method}, {"v_max", vmax}};
  if (const auto& br = table.j2_sign_change; br.has_value()) {
    const std::pair<double, double> b = br.value();
    extra["j2_sign_change"] = nlohmann::json::array({b.first, b.second});
  }
  emit("tb", p, c.out, csv.str(), start, basis_grids(p), extra);
}

nlohmann::json deviation_json(const BandDeviation& d) {
  return {{"band", d.band}, {"max_abs", d.max_abs}, {"mean_abs", d.mean_abs}, {"threshold", d.threshold},
          {"relative", d.relative}, {"points", d.points}, {"pass", d.pass}};
}

void cmd_compare(const Common& c, const CompareOptions& co) {
  const auto start = Clock::now();
  const auto p = load(c);
  const auto rep = compare(p, co);
  nlohmann::json j;
  j["params"] = params_to_json(rep.params);
  j["gamma0"] = rep.gamma0;
  j["full_vs_dark"] = nlohmann::json::array();
  for (const auto& d : rep.full_vs_dark) j["full_vs_dark"].push_back(deviation_json(d));
  j["scatter_vs_dark"] = nlohmann::json::array();
  for (const auto& d : rep.scatter_vs_dark) j["scatter_vs_dark"].push_back(deviation_json(d));
  j["symmetry"] = {{"max_abs", rep.symmetry_max}, {"threshold", rep.symmetry_threshold}, {"pass", rep.symmetry_pass}};
  j["pass"] = rep.pass();
  emit("compare", p, c.out, j.dump(2) + "\n", start, basis_grids(p), {{"pass", rep.pass()}});
  std::cout << (rep.pass() ? "compare: all checks pass\n" : "compare: some checks fail (see report)\n");
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Band structures, scattering dispersions, Wannier functions and tight-binding parameters of a "
               "tripod sub-wavelength optical lattice"};
  app.set_version_flag("--version", TRIPOD_VERSION);
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: TRIPOD_THREADS or 1)")->check(CLI::NonNegativeNumber);

  Common pc{"", "pot.csv"}, bc{"", "bands.csv"}, sc{"", "scat.csv"}, wc{"", "w.csv"}, tc{"", "tb.csv"},
      cc{"", "compare.json"};
  auto add_common = [](CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "JSON parameter file (missing keys use defaults)");
    sub->add_option("--out", c.out, "Output file")->capture_default_str();
  };

  auto* pot = app.add_subcommand("potentials", "Fields, mixing angles and geometric potentials over one period");
  int samples = 0;
  add_common(pot, pc);
  pot->add_option("--samples", samples, "Grid points over [0, a) (default n_x)");

  auto* bands = app.add_subcommand("bands", "Bloch bands over the extended zone");
  std::string method = "full";
  bool track = false;
  double weight_max = 0.05;
  add_common(bands, bc);
  bands->add_option("--method", method, "full | dark")->capture_default_str();
  bands->add_flag("--track", track, "Reorder bands along q by eigenvector overlap");
  bands->add_option("--excited-weight-max", weight_max, "Full solver: largest admitted |0> weight")
      ->capture_default_str();

  auto* scat = app.add_subcommand("scatter", "Transfer-matrix dispersion from barrier scattering");
  double qmax = 6.0;
  int nq = 2000;
  bool approx = false, reduced = false;
  add_common(scat, sc);
  scat->add_option("--qmax", qmax, "Largest momentum Q in units of pi/a")->capture_default_str();
  scat->add_option("--nq", nq, "Number of Q samples")->capture_default_str();
  scat->add_flag("--gamma0-approx", approx, "Use phi(0) - phi(a/2) instead of the quadrature");
  scat->add_flag("--reduced", reduced, "Solve the two-component problem valid near alpha = 0");

  auto* wan = app.add_subcommand("wannier", "Multi-component Wannier function");
  int band = 1, center = 0, ppa = 256;
  std::string wmethod = "auto", threshold = "80deg";
  bool adiabatic = false;
  add_common(wan, wc);
  wan->add_option("--band", band, "Band index (1-based)")->capture_default_str();
  wan->add_option("--center", center, "Center index n (x = n a / 2)")->capture_default_str();
  wan->add_option("--method", wmethod,
                  "auto | center | shifted | lambda-limit. auto: odd bands use center; even bands use shifted, "
                  "or lambda-limit when alpha exceeds --lambda-threshold")
      ->capture_default_str();
  wan->add_option("--lambda-threshold", threshold, "alpha above which even bands use lambda-limit (heuristic)")
      ->capture_default_str();
  wan->add_flag("--adiabatic", adiabatic, "Build from dark-sector states (components D1, D2 only)");
  wan->add_option("--points-per-a", ppa, "Minimum grid resolution")->capture_default_str();

  auto* tb = app.add_subcommand("tb", "Tight-binding parameters J_v and parameter sweeps");
  int tb_band = 1, steps = 46, vmax = 8;
  std::string sweep = "alpha", from = "0", to = "90deg", tb_method = "full";
  add_common(tb, tc);
  tb->add_option("--band", tb_band, "Band index (1-based)")->capture_default_str();
  tb->add_option("--sweep", sweep, "alpha | delta | none")->capture_default_str();
  tb->add_option("--from", from, "Sweep start (alpha accepts 45deg)")->capture_default_str();
  tb->add_option("--to", to, "Sweep end")->capture_default_str();
  tb->add_option("--steps", steps, "Sweep points")->capture_default_str();
  tb->add_option("--method", tb_method, "full | dark")->capture_default_str();
  tb->add_option("--vmax", vmax, "Largest hopping range v")->capture_default_str();

  auto* cmp = app.add_subcommand("compare", "Cross-check full, dark and scattering bands");
  CompareOptions co;
  add_common(cmp, cc);
  cmp->add_option("--bands", co.bands, "Bands to compare")->capture_default_str();
  cmp->add_option("--band1-tol", co.band1_tol, "Band 1 full-vs-dark limit, E_R")->capture_default_str();
  cmp->add_option("--rel-tol", co.higher_rel_tol, "Higher bands full-vs-dark limit, fraction of E")
      ->capture_default_str();
  cmp->add_option("--scatter-tol", co.scatter_tol, "Odd bands scatter-vs-dark limit, E_R")->capture_default_str();
  cmp->add_option("--nq", co.n_Q, "Number of Q samples for the scattering sweep")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    threads = resolve_threads(threads);
    if (*pot) cmd_potentials(pc, samples);
    else if (*bands) cmd_bands(bc, method, track, weight_max, threads);
    else if (*scat) cmd_scatter(sc, qmax, nq, approx, reduced, threads);
    else if (*wan) cmd_wannier(wc, band, center, wmethod, threshold, adiabatic, ppa, threads);
    else if (*tb) cmd_tb(tc, tb_band, sweep, from, to, steps, tb_method, vmax, threads);
    else if (*cmp) {
      co.band_options.threads = threads;
      co.scatter_options.threads = threads;
      cmd_compare(cc, co);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid number (" << e.what() << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace tripod

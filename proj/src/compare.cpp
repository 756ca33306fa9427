#include "tripod/compare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tripod/errors.hpp"

namespace tripod {

bool ComparisonReport::pass() const {
  auto ok = [](const std::vector<BandDeviation>& v) {
    return std::all_of(v.begin(), v.end(), [](const BandDeviation& d) { return d.pass; });
  };
  return symmetry_pass && ok(full_vs_dark) && ok(scatter_vs_dark);
}

double symmetry_defect(const BlochBandSet& set, int max_band) {
  const int nb = std::min(max_band, set.n_bands());
  double worst = 0.0;
  for (int i = 0; i < set.n_q(); ++i) {
    const double q = set.q_grid[static_cast<std::size_t>(i)];
    const int j = find_q(set.q_grid, -q, 1e-9);
    if (j < 0) continue;
    for (int s = 0; s < nb; ++s) worst = std::max(worst, std::abs(set.energies(i, s) - set.energies(j, s)));
  }
  return worst;
}

namespace {

void finish(BandDeviation& d, double sum) {
  d.mean_abs = d.points > 0 ? sum / d.points : 0.0;
  d.pass = d.points > 0 && d.worst_ratio < 1.0;
}

}  // namespace

BandDeviation band_deviation(const BlochBandSet& a, const BlochBandSet& b, int s, double tol, bool relative) {
  if (a.q_grid.size() != b.q_grid.size()) throw ValidationError("band_deviation: q grids differ");
  BandDeviation d;
  d.band = s;
  d.threshold = tol;
  d.relative = relative;
  double sum = 0.0;
  for (int i = 0; i < a.n_q(); ++i) {
    const double ea = a.energies(i, s - 1).real();
    const double eb = b.energies(i, s - 1).real();
    const double dev = std::abs(ea - eb);
    const double allowed = relative ? tol * std::abs(eb) : tol;
    d.max_abs = std::max(d.max_abs, dev);
    d.worst_ratio = std::max(d.worst_ratio, allowed > 0.0 ? dev / allowed : INFINITY);
    sum += dev;
    ++d.points;
  }
  finish(d, sum);
  return d;
}

BandDeviation scatter_deviation(const BlochBandSet& dark, const DispersionPointSet& disp, int s, double tol) {
  BandDeviation d;
  d.band = s;
  d.threshold = tol;
  double sum = 0.0;
  for (int i = 0; i < dark.n_q(); ++i) {
    const double dev = curve_deviation(disp, dark.q_grid[static_cast<std::size_t>(i)], dark.energies(i, s - 1).real());
    d.max_abs = std::max(d.max_abs, dev);
    d.worst_ratio = std::max(d.worst_ratio, dev / tol);
    sum += dev;
    ++d.points;
  }
  finish(d, sum);
  return d;
}

ComparisonReport compare(const LatticeParams& p, const CompareOptions& opt) {
  LatticeParams lp = p;
  lp.n_bands = std::max(lp.n_bands, opt.bands);
  ComparisonReport rep;
  rep.params = lp;
  const auto full = full_bands(lp, opt.band_options);
  const auto dark = dark_bands(lp, opt.band_options);
  for (int s = 1; s <= opt.bands; ++s)
    rep.full_vs_dark.push_back(s == 1 ? band_deviation(full, dark, s, opt.band1_tol, false)
                                      : band_deviation(full, dark, s, opt.higher_rel_tol, true));

  double emax = 0.0;
  for (int s = 1; s <= opt.bands; s += 2) emax = std::max(emax, dark.energies.col(s - 1).real().maxCoeff());
  const double qmax = std::numbers::pi * std::sqrt(emax + 1.0);
  const auto disp = dispersion(lp, uniform_Q_grid(qmax, opt.n_Q), opt.scatter_options);
  rep.gamma0 = disp.gamma0;
  for (int s = 1; s <= opt.bands; s += 2) rep.scatter_vs_dark.push_back(scatter_deviation(dark, disp, s, opt.scatter_tol));

  rep.symmetry_max = symmetry_defect(full, opt.bands);
  rep.symmetry_pass = rep.symmetry_max < rep.symmetry_threshold;
  return rep;
}

}  // namespace tripod

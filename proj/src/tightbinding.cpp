#include "tripod/tightbinding.hpp"

#include <algorithm>
#include <cmath>

#include "tripod/errors.hpp"

namespace tripod {

using cplx = std::complex<double>;

HoppingFit extract_J(const std::vector<double>& q_grid, const Eigen::VectorXcd& energies, int v_max) {
  const int n = static_cast<int>(q_grid.size());
  if (n < 2 || energies.size() != n) throw ValidationError("extract_J: grid and energies disagree");
  if (v_max < 0) throw ValidationError("extract_J: v_max must be non-negative");
  const auto ref = extended_zone_grid(n);
  for (int i = 0; i < n; ++i)
    if (std::abs(ref[static_cast<std::size_t>(i)] - q_grid[static_cast<std::size_t>(i)]) > 1e-9)
      throw ValidationError("extract_J: q grid must be the uniform extended-zone grid");
  if (2 * v_max >= n) throw ValidationError("extract_J: v_max too large for the q grid");

  HoppingFit fit;
  fit.J = Eigen::VectorXcd::Zero(v_max + 1);
  for (int v = 0; v <= v_max; ++v) {
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) acc += energies(i) * std::cos(0.5 * v * q_grid[static_cast<std::size_t>(i)]);
    fit.J(v) = (v == 0 ? 1.0 : 2.0) * acc / static_cast<double>(n);
  }
  for (int i = 0; i < n; ++i)
    fit.residual = std::max(fit.residual, std::abs(energies(i) - tb_energy(fit.J, q_grid[static_cast<std::size_t>(i)])));
  fit.bandwidth = energies.real().maxCoeff() - energies.real().minCoeff();
  return fit;
}

HoppingFit extract_J(const BlochBandSet& bands, int s, int v_max) {
  if (s < 1 || s > bands.n_bands()) throw ValidationError("extract_J: band index out of range");
  return extract_J(bands.q_grid, bands.energies.col(s - 1), v_max);
}

cplx tb_energy(const Eigen::VectorXcd& J, double q) {
  cplx e = 0.0;
  for (Eigen::Index v = 0; v < J.size(); ++v) e += J(v) * std::cos(0.5 * static_cast<double>(v) * q);
  return e;
}

namespace {

HoppingFit fit_at(const LatticeParams& p, int s, const SweepOptions& opt) {
  LatticeParams lp = validate(p);
  if (s > lp.n_bands) lp.n_bands = s;
  BandOptions bo = opt.bands;
  bo.vectors = false;
  const auto set = solve_bands(opt.method, lp, bo);
  return extract_J(set, s, opt.v_max);
}

std::optional<std::pair<double, double>> bracket(const TightBindingTable& t) {
  for (std::size_t i = 1; i < t.fits.size(); ++i) {
    const double a = t.fits[i - 1].J.size() > 2 ? t.fits[i - 1].J(2).real() : 0.0;
    const double b = t.fits[i].J.size() > 2 ? t.fits[i].J(2).real() : 0.0;
    if (a == 0.0) return std::pair{t.values[i - 1], t.values[i - 1]};
    if ((a < 0.0) != (b < 0.0)) return std::pair{t.values[i - 1], t.values[i]};
  }
  return std::nullopt;
}

}  // namespace

TightBindingTable sweep_alpha(const LatticeParams& p, const std::vector<double>& alphas, int s,
                              const SweepOptions& opt) {
  if (opt.v_max < 2) throw ValidationError("sweeps need v_max >= 2");
  TightBindingTable t;
  t.band = s;
  t.axis = SweepAxis::Alpha;
  t.method = opt.method;
  for (double a : alphas) {
    LatticeParams lp = p;
    lp.alpha = a;
    lp.alpha_fold = {};
    t.values.push_back(a);
    t.fits.push_back(fit_at(lp, s, opt));
  }
  t.j2_sign_change = bracket(t);
  return t;
}

TightBindingTable sweep_delta(const LatticeParams& p, const std::vector<double>& deltas, int s,
                              const SweepOptions& opt) {
  if (opt.v_max < 2) throw ValidationError("sweeps need v_max >= 2");
  TightBindingTable t;
  t.band = s;
  t.axis = SweepAxis::Delta;
  t.method = opt.method;
  for (double d : deltas) {
    LatticeParams lp = p;
    lp.delta = d;
    t.values.push_back(d);
    t.fits.push_back(fit_at(lp, s, opt));
  }
  t.j2_sign_change = bracket(t);
  if (t.j2_sign_change && opt.bisection_tol > 0.0) {
    auto [lo, hi] = *t.j2_sign_change;
    auto j2 = [&](double d) {
      LatticeParams lp = p;
      lp.delta = d;
      return fit_at(lp, s, opt).J(2).real();
    };
    double flo = j2(lo);
    while (hi - lo > 2.0 * opt.bisection_tol) {
      const double mid = 0.5 * (lo + hi);
      const double fm = j2(mid);
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    t.j2_sign_change = std::pair{lo, hi};
  }
  return t;
}

}  // namespace tripod

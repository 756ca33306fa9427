#include "tripod/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tripod/eigen_engine.hpp"
#include "tripod/errors.hpp"
#include "tripod/optical.hpp"
#include "tripod/parallel.hpp"

namespace tripod {

using cplx = std::complex<double>;
using std::numbers::pi;

ScatterAmplitudes tr_amplitudes(double energy, double eps_tilde) {
  if (!(energy > 0.0) || !std::isfinite(energy)) throw ValidationError("scattering energy must be positive");
  if (!(eps_tilde > 0.0)) throw ValidationError("eps_tilde must be positive");
  ScatterAmplitudes s;
  s.energy = energy;
  s.Q = std::sqrt(kTwoMass * energy);
  const double u = s.Q * eps_tilde / (pi * pi);
  s.validity = u;
  s.t = 1.0 / cplx(-1.0, 1.0 / u);
  s.r = -1.0 / cplx(1.0, -u);
  return s;
}

Eigen::Matrix2cd transfer_matrix(const ScatterAmplitudes& s) {
  Eigen::Matrix2cd m;
  m << 1.0 / s.t, std::conj(s.r) / std::conj(s.t), s.r / s.t, 1.0 / std::conj(s.t);
  return m;
}

Eigen::Matrix4cd build_WQ(double Q, double eps_tilde, double gamma0) {
  return build_WQ(Q, transfer_matrix(tr_amplitudes(Q * Q / kTwoMass, eps_tilde)), gamma0);
}

Eigen::Matrix4cd build_WQ(double Q, const Eigen::Matrix2cd& m, double gamma0) {
  Eigen::Matrix2cd iq = Eigen::Matrix2cd::Zero();
  iq(0, 0) = std::polar(1.0, -0.5 * Q);
  iq(1, 1) = std::polar(1.0, 0.5 * Q);
  const double c = std::cos(gamma0), sn = std::sin(gamma0);
  Eigen::Matrix4cd w;
  w.topLeftCorner<2, 2>() = c * iq;
  w.topRightCorner<2, 2>() = sn * iq * m;
  w.bottomLeftCorner<2, 2>() = -sn * iq;
  w.bottomRightCorner<2, 2>() = c * iq * m;
  return w;
}

double fold_extended(double q) {
  double f = std::remainder(q, 4.0 * pi);  // [-2pi, 2pi]
  if (f <= -2.0 * pi) f += 4.0 * pi;
  return f;
}

std::vector<double> uniform_Q_grid(double qmax, int n) {
  if (!(qmax > 0.0) || n < 2) throw ValidationError("Q grid needs qmax > 0 and at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = qmax * (i + 1) / n;
  return g;
}

namespace {

double resolve_gamma0(const LatticeParams& p, const ScatterOptions& opt) {
  if (opt.gamma0) return *opt.gamma0;
  if (opt.gamma0_approx) return optics::gamma0_zeroth_order(p);
  return optics::gamma0(p).value;
}

void check_grid(const std::vector<double>& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0)) throw ValidationError("Q grid must be positive");
    if (i > 0 && !(g[i] > g[i - 1])) throw ValidationError("Q grid must be ascending");
  }
}

double wrap_dq(double dq) { return std::remainder(dq, 4.0 * pi); }

// Joins each point to the nearest still-open branch of the previous Q step when the
// distance hypot(dE, dq a/pi) stays below the jump threshold.
void group_branches(DispersionPointSet& set, double jump) {
  std::vector<std::size_t> prev, cur;
  int next_branch = 0;
  std::size_t i = 0;
  while (i < set.points.size()) {
    const int qi = set.points[i].q_index;
    cur.clear();
    while (i < set.points.size() && set.points[i].q_index == qi) cur.push_back(i++);
    struct Cand { double d; std::size_t a, b; };
    std::vector<Cand> cands;
    if (!prev.empty() && set.points[prev.front()].q_index == qi - 1)
      for (auto a : cur)
        for (auto b : prev) {
          const auto& pa = set.points[a];
          const auto& pb = set.points[b];
          const double d = std::hypot(pa.E - pb.E, wrap_dq(pa.q - pb.q) / pi);
          if (d < jump) cands.push_back({d, a, b});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.d < y.d; });
    std::vector<std::size_t> taken;
    for (const auto& c : cands) {
      if (set.points[c.a].branch >= 0) continue;
      if (std::find(taken.begin(), taken.end(), c.b) != taken.end()) continue;
      set.points[c.a].branch = set.points[c.b].branch;
      taken.push_back(c.b);
    }
    for (auto a : cur)
      if (set.points[a].branch < 0) set.points[a].branch = next_branch++;
    prev = cur;
  }
  set.n_branches = next_branch;
}

template <typename Build>
DispersionPointSet solve_sweep(const std::vector<double>& Q_grid, const ScatterOptions& opt, Build build,
                               int copies) {
  check_grid(Q_grid);
  const int n = static_cast<int>(Q_grid.size());
  std::vector<std::vector<DispersionPoint>> per(static_cast<std::size_t>(n));
  std::vector<int> rejected(static_cast<std::size_t>(n), 0);
  parallel_for(n, resolve_threads(opt.threads), [&](int iq) {
    const double Q = Q_grid[static_cast<std::size_t>(iq)];
    const CMatrix<double> w = build(Q);
    EigOptions eo;
    eo.detect_hermitian = false;
    const auto r = eig_dense(w, eo);
    for (Eigen::Index k = 0; k < r.eigenvalues.size(); ++k) {
      const cplx lam = r.eigenvalues(k);
      if (std::abs(std::abs(lam) - 1.0) >= opt.unimodular_tol) {
        ++rejected[static_cast<std::size_t>(iq)];
        continue;
      }
      // lambda = exp(-i q a / copies): the 4x4 problem advances by a/2, the reduced one by a.
      const double q0 = -static_cast<double>(copies == 1 ? 2 : 1) * std::arg(lam);
      for (int c = 0; c < copies; ++c) {
        DispersionPoint pt;
        pt.q_index = iq;
        pt.Q = Q;
        pt.E = Q * Q / kTwoMass;
        pt.q = fold_extended(q0 + 2.0 * pi * c);
        pt.lambda_mod = std::abs(lam);
        pt.residual = r.residuals(k);
        per[static_cast<std::size_t>(iq)].push_back(pt);
      }
    }
    auto& v = per[static_cast<std::size_t>(iq)];
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.q < b.q; });
  });
  DispersionPointSet set;
  for (int iq = 0; iq < n; ++iq) {
    for (auto& pt : per[static_cast<std::size_t>(iq)]) set.points.push_back(pt);
    set.evanescent += rejected[static_cast<std::size_t>(iq)];
  }
  group_branches(set, opt.branch_jump);
  return set;
}

}  // namespace

DispersionPointSet dispersion(const LatticeParams& p, const std::vector<double>& Q_grid,
                              const ScatterOptions& opt) {
  const double g0 = resolve_gamma0(p, opt);
  const double et = p.eps_tilde();
  auto set = solve_sweep(
      Q_grid, opt, [&](double Q) { return CMatrix<double>(build_WQ(Q, et, g0)); }, 1);
  set.gamma0 = g0;
  set.eps_tilde = et;
  return set;
}

DispersionPointSet reduced_dispersion_alpha0(const LatticeParams& p, const std::vector<double>& Q_grid,
                                             const ScatterOptions& opt) {
  const double et = p.eps_tilde();
  auto set = solve_sweep(
      Q_grid, opt,
      [&](double Q) {
        const auto s = tr_amplitudes(Q * Q / kTwoMass, et);
        Eigen::Matrix2cd i2 = Eigen::Matrix2cd::Zero();
        i2(0, 0) = std::polar(1.0, -Q);
        i2(1, 1) = std::polar(1.0, Q);
        return CMatrix<double>(-i2 * transfer_matrix(s));
      },
      2);
  set.gamma0 = 0.5 * pi;
  set.eps_tilde = et;
  return set;
}

double curve_deviation(const DispersionPointSet& set, double q, double E, double max_dq) {
  double best = std::numeric_limits<double>::infinity();
  const auto& pts = set.points;
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (i == 0 || pts[i].q_index != pts[i - 1].q_index) starts.push_back(i);
  starts.push_back(pts.size());
  for (std::size_t g = 0; g + 2 < starts.size(); ++g) {
    const std::size_t a0 = starts[g], b0 = starts[g + 1], b1 = starts[g + 2];
    if (pts[b0].q_index != pts[a0].q_index + 1) continue;
    for (std::size_t a = a0; a < b0; ++a)
      for (std::size_t b = b0; b < b1; ++b) {
        const double d = wrap_dq(pts[b].q - pts[a].q);
        if (std::abs(d) > max_dq) continue;
        const double t0 = wrap_dq(q - pts[a].q);
        if (d == 0.0) {
          if (t0 == 0.0) best = std::min(best, std::abs(pts[a].E - E));
          continue;
        }
        const double f = t0 / d;
        if (f < 0.0 || f > 1.0) continue;
        best = std::min(best, std::abs(pts[a].E + f * (pts[b].E - pts[a].E) - E));
      }
  }
  return best;
}

}  // namespace tripod

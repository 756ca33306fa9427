#include "tripod/wannier.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tripod/errors.hpp"
#include "tripod/optical.hpp"

namespace tripod {

using cplx = std::complex<double>;
using std::numbers::pi;

std::string to_string(WannierMethod m) {
  switch (m) {
    case WannierMethod::Auto: return "auto";
    case WannierMethod::Center: return "center";
    case WannierMethod::Shifted: return "shifted";
    case WannierMethod::LambdaLimit: return "lambda-limit";
  }
  return "auto";
}

WannierMethod wannier_method_from_string(const std::string& s) {
  if (s == "auto") return WannierMethod::Auto;
  if (s == "center") return WannierMethod::Center;
  if (s == "shifted") return WannierMethod::Shifted;
  if (s == "lambda-limit") return WannierMethod::LambdaLimit;
  throw ValidationError("unknown Wannier method '" + s + "'");
}

ProjectionVectors projection_vectors(int n, const LatticeParams& p) {
  const double c = std::cos(p.alpha);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double norm = std::sqrt(1.0 + c * c);
  ProjectionVectors pv;
  pv.n = n;
  pv.alpha = p.alpha;
  pv.nbar << 1.0 / norm, -sign * c / norm, 0.0;
  pv.nbar_perp << c / norm, sign / norm, 0.0;
  return pv;
}

WannierMethod resolve_method(WannierMethod m, int band, double alpha, double threshold) {
  if (m != WannierMethod::Auto) return m;
  if (band % 2 == 1) return WannierMethod::Center;
  return alpha > threshold ? WannierMethod::LambdaLimit : WannierMethod::Shifted;
}

namespace {

struct Supercell {
  int N = 0, m_half = 0, M = 0;
  double L = 0.0, dq = 0.0, x0 = 0.0, dx = 0.0;
};

Supercell make_supercell(const BlochBandSet& set, int points_per_a) {
  Supercell sc;
  sc.N = set.n_q();
  const auto ref = extended_zone_grid(sc.N);
  for (int j = 0; j < sc.N; ++j)
    if (std::abs(ref[static_cast<std::size_t>(j)] - set.q_grid[static_cast<std::size_t>(j)]) > 1e-9)
      throw ValidationError("Wannier construction needs the uniform extended-zone q grid");
  const int need = std::max(2 * set.params.n_harmonics + 3, points_per_a / 2);
  sc.m_half = 1;
  while (sc.m_half < need) sc.m_half *= 2;
  sc.M = sc.N * sc.m_half;
  sc.L = 0.5 * sc.N;
  sc.dq = 4.0 * pi / sc.N;
  sc.x0 = -0.5 * sc.L;
  sc.dx = sc.L / sc.M;
  return sc;
}

void check_band(const BlochBandSet& set, int s) {
  if (s < 1 || s > set.n_bands()) throw ValidationError("band index out of range");
  for (const auto& v : set.states)
    if (v.cols() < s) throw ValidationError("Wannier construction needs eigenvectors");
}

cplx eval_channel(const SpinorBlochState& st, int c, double x) {
  cplx acc = 0.0;
  const auto& b = st.basis;
  for (int i = 0; i < b.block(); ++i) acc += st.coeffs(b.index(c, i)) * std::polar(1.0, b.momenta[c](i) * x);
  return acc;
}

struct Gauge {
  std::vector<cplx> phases;       ///< exp(i chi_q)
  std::vector<cplx> functionals;  ///< designated functional before phase fixing
  double x_center = 0.0;
};

// Converts raw functionals to unit phases exp(i chi) = conj(F)/|F|, inheriting across isolated nodes.
std::vector<cplx> phases_from(const std::vector<cplx>& f, double tol) {
  const std::size_t n = f.size();
  std::vector<cplx> ph(n);
  std::vector<bool> ok(n);
  for (std::size_t i = 0; i < n; ++i) {
    ok[i] = std::abs(f[i]) >= tol;
    if (ok[i]) ph[i] = std::conj(f[i]) / std::abs(f[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (ok[i]) continue;
    if (i > 0 && ok[i - 1]) ph[i] = ph[i - 1];
    else if (i + 1 < n && ok[i + 1]) ph[i] = ph[i + 1];
    else
      throw NumericalError("gauge-undefined: phase functional vanishes at q index " + std::to_string(i) +
                           " and its neighbours");
  }
  return ph;
}

Gauge full_gauge(const BlochBandSet& set, int s, int n, WannierMethod method, double tol) {
  const auto pv = projection_vectors(n, set.params);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  Gauge g;
  g.x_center = 0.5 * n + (method == WannierMethod::LambdaLimit ? 0.25 : 0.0);
  const double x_eval = method == WannierMethod::Center ? 0.5 * n : 0.5 * n + 0.25;
  for (int iq = 0; iq < set.n_q(); ++iq) {
    const auto st = set.state(iq, s);
    const Eigen::Vector3cd ground(eval_channel(st, 1, x_eval), eval_channel(st, 2, x_eval),
                                  eval_channel(st, 3, x_eval));
    cplx f = sign * pv.nbar.cast<cplx>().dot(ground);
    if (method == WannierMethod::Shifted) f *= std::polar(1.0, 0.25 * st.q);
    g.functionals.push_back(f);
  }
  g.phases = phases_from(g.functionals, tol);
  return g;
}

Gauge dark_gauge(const BlochBandSet& set, int s, int n, double tol) {
  Gauge g;
  g.x_center = 0.5 * n;
  for (int iq = 0; iq < set.n_q(); ++iq) {
    const auto st = set.state(iq, s);
    cplx f;
    if (s % 2 == 1) {
      f = eval_channel(st, 0, g.x_center);
    } else {
      const double xe = g.x_center + 0.25;
      f = std::polar(1.0, 0.25 * st.q) * (eval_channel(st, 0, xe) + eval_channel(st, 1, xe));
    }
    g.functionals.push_back(f);
  }
  g.phases = phases_from(g.functionals, tol);
  return g;
}

// W_c(x_m) = (N L)^{-1/2} sum_q e^{i chi_q} e^{-i q x_c} e^{i q x} g_{q,c}(x) via one inverse FFT per channel.
Eigen::MatrixXcd synthesize(const BlochBandSet& set, int s, const Gauge& g, const Supercell& sc) {
  const int channels = set.problem() == Problem::Full ? 4 : 2;
  Eigen::MatrixXcd out(sc.M, channels);
  Eigen::FFT<double> fft;
  std::vector<cplx> spec(static_cast<std::size_t>(sc.M)), res;
  const double scale = 1.0 / std::sqrt(sc.N * sc.L);
  for (int c = 0; c < channels; ++c) {
    std::fill(spec.begin(), spec.end(), cplx(0.0));
    for (int iq = 0; iq < sc.N; ++iq) {
      const double q = set.q_grid[static_cast<std::size_t>(iq)];
      const auto st = set.state(iq, s);
      const cplx pre = scale * g.phases[static_cast<std::size_t>(iq)] * std::polar(1.0, -q * g.x_center);
      for (int i = 0; i < st.basis.block(); ++i) {
        const double p = q + st.basis.momenta[c](i);
        const long P = std::lround(p / sc.dq);
        const std::size_t bin = static_cast<std::size_t>(((P % sc.M) + sc.M) % sc.M);
        spec[bin] += pre * st.coeffs(st.basis.index(c, i)) * std::polar(1.0, sc.dq * P * sc.x0);
      }
    }
    fft.inv(res, spec);
    for (int m = 0; m < sc.M; ++m) out(m, c) = res[static_cast<std::size_t>(m)] * static_cast<double>(sc.M);
  }
  return out;
}

}  // namespace

std::vector<cplx> gauge_functionals(const BlochBandSet& bands, int s, int n, const WannierOptions& opt) {
  check_band(bands, s);
  Gauge g;
  if (bands.method == Method::Full) {
    const auto m = resolve_method(opt.method, s, bands.params.alpha, opt.lambda_alpha_threshold);
    g = full_gauge(bands, s, n, m, opt.node_tol);
  } else {
    g = dark_gauge(bands, s, n, opt.node_tol);
  }
  std::vector<cplx> out(g.functionals.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = g.functionals[i] * g.phases[i];
  return out;
}

WannierFunction build_wannier(const BlochBandSet& bands, int s, int n, const WannierOptions& opt) {
  if (bands.method != Method::Full) throw ValidationError("build_wannier expects full-solver bands");
  check_band(bands, s);
  const auto sc = make_supercell(bands, opt.points_per_a);
  const auto method = resolve_method(opt.method, s, bands.params.alpha, opt.lambda_alpha_threshold);
  const Gauge g = full_gauge(bands, s, n, method, opt.node_tol);

  WannierFunction w;
  w.band = s;
  w.center = n;
  w.method = method;
  w.n_q = sc.N;
  w.x_center = g.x_center;
  w.x0 = sc.x0;
  w.dx = sc.dx;
  w.channels = synthesize(bands, s, g, sc);
  w.labels = {"D1", "D2", "B", "0"};
  w.components.resize(sc.M, 4);
  for (int m = 0; m < sc.M; ++m) {
    const auto fr = optics::internal_frame(w.x(m), bands.params);
    const Eigen::Vector3cd ground = w.channels.row(m).segment<3>(1).transpose();
    w.components(m, 0) = fr.dark1.cast<cplx>().dot(ground);
    w.components(m, 1) = fr.dark2.cast<cplx>().dot(ground);
    w.components(m, 2) = fr.bright.cast<cplx>().dot(ground);
    w.components(m, 3) = w.channels(m, 0);
  }
  return w;
}

WannierFunction adiabatic_wannier(const BlochBandSet& dark, int s, int n, const WannierOptions& opt) {
  if (dark.method != Method::Dark) throw ValidationError("adiabatic_wannier expects dark-solver bands");
  check_band(dark, s);
  const auto sc = make_supercell(dark, opt.points_per_a);
  const Gauge g = dark_gauge(dark, s, n, opt.node_tol);
  WannierFunction w;
  w.band = s;
  w.center = n;
  w.method = s % 2 == 1 ? WannierMethod::Center : WannierMethod::Shifted;
  w.n_q = sc.N;
  w.x_center = g.x_center;
  w.x0 = sc.x0;
  w.dx = sc.dx;
  w.components = synthesize(dark, s, g, sc);
  w.labels = {"D1", "D2"};
  return w;
}

std::complex<double> overlaps(const WannierFunction& w1, const WannierFunction& w2) {
  if (w1.size() != w2.size() || w1.components.cols() != w2.components.cols() ||
      std::abs(w1.x0 - w2.x0) > 1e-12 || std::abs(w1.dx - w2.dx) > 1e-15)
    throw ValidationError("overlaps: Wannier functions live on different grids");
  cplx acc = 0.0;
  for (Eigen::Index c = 0; c < w1.components.cols(); ++c) acc += w1.components.col(c).dot(w2.components.col(c));
  return acc * w1.dx;
}

Eigen::VectorXcd project_ground(const WannierFunction& w, const Eigen::Vector3d& v) {
  if (w.channels.cols() != 4) throw ValidationError("project_ground needs the full four-channel construction");
  return w.channels.rightCols<3>() * v.cast<cplx>();
}

double aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const cplx ov = (b.array().conjugate() * a.array()).sum();  // <b|a>
  const cplx phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cplx(1.0);
  return (a - phase * b).norm() / a.norm();
}

double antisymmetry_defect(const WannierFunction& w, int component) {
  const int M = w.size();
  const long c = std::lround((w.x_center - w.x0) / w.dx);
  const auto f = w.components.col(component);
  double num = 0.0;
  for (int m = 0; m < M; ++m) {
    const long mirror = ((2 * c - m) % M + M) % M;
    num += std::norm(f(m) + f(mirror));
  }
  return std::sqrt(num) / (2.0 * f.norm());
}

double norm_within(const WannierFunction& w, const std::vector<int>& comps, double x_c, double half_width) {
  double inside = 0.0, total = 0.0;
  for (int m = 0; m < w.size(); ++m) {
    double row = 0.0;
    for (int c : comps) row += std::norm(w.components(m, c));
    total += row;
    if (std::abs(w.x(m) - x_c) <= half_width + 1e-12) inside += row;
  }
  return total > 0.0 ? inside / total : 0.0;
}

}  // namespace tripod

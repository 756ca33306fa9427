#pragma once

// Closed-form laser fields, mixing angles, internal frame and geometric
// potentials of the tripod lattice. Everything is a pure function of
// (x, params) and is templated on the real scalar so the same code can be
// evaluated in extended precision.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "tripod/params.hpp"

namespace tripod::optics {

template <typename Scalar = double>
struct FieldSample {
  Scalar x{};
  Scalar omega1{}, omega2{}, omega3{};
  Scalar omega_tot{};
};

template <typename Scalar = double>
struct MixingAngles {
  Scalar theta{}, phi{};
  Scalar dtheta{}, dphi{};
};

template <typename Scalar = double>
struct InternalFrame {
  using Vec3 = Eigen::Matrix<Scalar, 3, 1>;  // over {|1>, |2>, |3>}
  Vec3 bright, dark1, dark2;
};

template <typename Scalar = double>
struct GeometricPotentials {
  Scalar a_y{};    ///< coefficient of sigma_y in the vector potential
  Scalar c1{}, c2{};
  Eigen::Matrix<Scalar, 2, 2> v_mat;  ///< scalar potential, E_R
};

template <typename Scalar = double>
struct BarrierSample {
  Scalar exact{};   ///< (theta')^2 / 2m in closed form
  Scalar approx{};  ///< sum of Lorentzian-squared barriers
};

namespace detail {

template <typename Scalar>
struct FieldDerivs {
  Scalar o1, o2, o3, d2, d3;
};

template <typename Scalar>
FieldDerivs<Scalar> field_derivs(Scalar x, const LatticeParams& p) {
  using std::cos, std::sin;
  const Scalar k = 2 * std::numbers::pi_v<Scalar>;
  const Scalar wp = static_cast<Scalar>(p.omega_p);
  const Scalar wc = wp / static_cast<Scalar>(p.eps);
  const Scalar al = static_cast<Scalar>(p.alpha);
  return {wp, wp * cos(k * x + al), wc * sin(k * x), -k * wp * sin(k * x + al),
          k * wc * cos(k * x)};
}

}  // namespace detail

/// Rabi frequencies Omega_1 = Omega_p, Omega_2 = Omega_p cos(2 pi x + alpha), Omega_3 = Omega_c sin(2 pi x).
template <typename Scalar = double>
FieldSample<Scalar> rabi(Scalar x, const LatticeParams& p) {
  using std::sin, std::cos, std::sqrt;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar wp = static_cast<Scalar>(p.omega_p);
  const Scalar wc = wp / static_cast<Scalar>(p.eps);
  FieldSample<Scalar> f;
  f.x = x;
  f.omega1 = wp;
  f.omega2 = wp * cos(2 * pi * x + static_cast<Scalar>(p.alpha));
  // Reduce the argument so Omega_3 vanishes exactly on x = n/2.
  const Scalar twice = 2 * x;
  const Scalar nearest = std::round(twice);
  f.omega3 = (twice == nearest) ? Scalar(0) : wc * sin(2 * pi * x);
  f.omega_tot = sqrt(f.omega1 * f.omega1 + f.omega2 * f.omega2 + f.omega3 * f.omega3);
  return f;
}

/// Spherical angles of the Rabi vector with analytic first derivatives.
/// phi is taken from atan2 with Omega_1 > 0, so it stays in (-pi/2, pi/2) and is continuous.
template <typename Scalar = double>
MixingAngles<Scalar> angles(Scalar x, const LatticeParams& p) {
  using std::atan2, std::sqrt;
  const auto f = detail::field_derivs(x, p);
  const Scalar o3 = rabi(x, p).omega3;
  const Scalar rho2 = f.o1 * f.o1 + f.o2 * f.o2;
  const Scalar rho = sqrt(rho2);
  const Scalar tot2 = rho2 + o3 * o3;
  MixingAngles<Scalar> m;
  m.phi = atan2(f.o2, f.o1);
  m.theta = atan2(rho, o3);
  m.dphi = f.d2 * f.o1 / rho2;
  m.dtheta = -(f.d3 * rho2 - o3 * f.o2 * f.d2) / (tot2 * rho);
  return m;
}

/// Bright state and the two dark states in the gauge where D1 depends on phi only.
template <typename Scalar = double>
InternalFrame<Scalar> internal_frame(Scalar x, const LatticeParams& p) {
  using std::sin, std::cos;
  const auto m = angles(x, p);
  const Scalar st = sin(m.theta), ct = cos(m.theta);
  const Scalar sp = sin(m.phi), cp = cos(m.phi);
  InternalFrame<Scalar> fr;
  fr.bright << st * cp, st * sp, ct;
  fr.dark1 << sp, -cp, Scalar(0);
  fr.dark2 << ct * cp, ct * sp, -st;
  return fr;
}

template <typename Scalar = double>
GeometricPotentials<Scalar> geometric_potentials(Scalar x, const LatticeParams& p) {
  using std::sin, std::cos;
  const auto m = angles(x, p);
  GeometricPotentials<Scalar> g;
  g.a_y = m.dphi * cos(m.theta);
  g.c1 = m.dphi * sin(m.theta);
  g.c2 = -m.dtheta;
  const Scalar inv2m = static_cast<Scalar>(kKineticPrefactor);
  g.v_mat << g.c1 * g.c1, g.c1 * g.c2, g.c2 * g.c1, g.c2 * g.c2;
  g.v_mat *= inv2m;
  return g;
}

/// Single Lorentzian-squared barrier v(x) = (k^2/2m) et^2 / (et^2 + k^2 x^2)^2 with k = 2 pi / a.
template <typename Scalar = double>
Scalar single_barrier(Scalar x, Scalar eps_tilde) {
  const Scalar k = 2 * std::numbers::pi_v<Scalar>;
  const Scalar k2_over_2m = k * k * static_cast<Scalar>(kKineticPrefactor);
  const Scalar den = eps_tilde * eps_tilde + k * k * x * x;
  return k2_over_2m * eps_tilde * eps_tilde / (den * den);
}

/// Exact barrier (theta')^2/2m from its closed form, and the narrow-barrier sum
/// over images x - n a/2 (64 images on each side of the nearest one).
template <typename Scalar = double>
BarrierSample<Scalar> barrier_approx(Scalar x, const LatticeParams& p) {
  using std::cos, std::sin;
  const Scalar k = 2 * std::numbers::pi_v<Scalar>;
  const Scalar e = static_cast<Scalar>(p.eps);
  const Scalar al = static_cast<Scalar>(p.alpha);
  const Scalar num = cos(k * x + 2 * al) + 3 * cos(k * x);
  const Scalar c = cos(k * x + al);
  const Scalar s = sin(k * x);
  const Scalar inner = e * e * c * c + s * s + e * e;
  BarrierSample<Scalar> b;
  // pi^2 eps^2 / (2 m a^2) = eps^2 in recoil units
  b.exact = e * e * num * num / ((c * c + 1) * inner * inner);

  const Scalar et = static_cast<Scalar>(p.eps_tilde());
  const long centre = std::lround(static_cast<double>(2 * x));
  Scalar sum = 0;
  for (long n = centre - 64; n <= centre + 64; ++n) sum += single_barrier(x - Scalar(n) / 2, et);
  b.approx = sum;
  return b;
}

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Composite Simpson rule on n (even) intervals of [lo, hi] with one Richardson halving step.
template <typename F>
QuadratureResult simpson_richardson(F&& f, double lo, double hi, int n) {
  auto simpson = [&](int intervals) {
    const double h = (hi - lo) / intervals;
    double acc = f(lo) + f(hi);
    for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return acc * h / 3.0;
  };
  if (n % 4 != 0) n += 4 - n % 4;
  const double fine = simpson(n);
  const double coarse = simpson(n / 2);
  return {fine, std::abs(fine - coarse) / 15.0};
}

/// Spin-rotation angle accumulated between adjacent barriers,
/// gamma_0 = -integral_0^{a/2} phi' cos(theta) dx.
inline QuadratureResult gamma0(const LatticeParams& p) {
  auto integrand = [&](double x) { return geometric_potentials(x, p).a_y; };
  auto r = simpson_richardson(integrand, 0.0, 0.5 * p.a, p.n_x);
  r.value = -r.value;
  return r;
}

/// Zeroth-order estimate with cos(theta) dropped: phi(0) - phi(a/2).
inline double gamma0_zeroth_order(const LatticeParams& p) {
  return angles(0.0, p).phi - angles(0.5 * p.a, p).phi;
}

}  // namespace tripod::optics

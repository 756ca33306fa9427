#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tripod/optical.hpp"

using namespace tripod;
using namespace tripod::optics;
using std::numbers::pi;

namespace {

LatticeParams lattice(double eps, double alpha) {
  LatticeParams p;
  p.eps = eps;
  p.alpha = alpha;
  return p;
}

// Test-side field model in extended precision.
struct Oracle {
  long double wp, wc, al;
  explicit Oracle(const LatticeParams& p) : wp(p.omega_p), wc(p.omega_p / p.eps), al(p.alpha) {}
  long double o2(long double x) const { return wp * std::cos(2 * std::numbers::pi_v<long double> * x + al); }
  long double o3(long double x) const { return wc * std::sin(2 * std::numbers::pi_v<long double> * x); }
  long double theta(long double x) const { return std::atan2(std::hypot(wp, o2(x)), o3(x)); }
  long double phi(long double x) const { return std::atan2(o2(x), wp); }
};

// Five-point central difference.
template <typename F>
long double deriv(F f, long double x, long double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

}  // namespace

TEST_SUITE("optical") {

TEST_CASE("Rabi frequencies at symmetric points") {
  const auto p = lattice(0.1, 0.0);
  auto f = rabi(0.0, p);
  CHECK(f.omega1 == 2000.0);
  CHECK(f.omega2 == doctest::Approx(2000.0));
  CHECK(f.omega3 == 0.0);
  f = rabi(0.25, p);
  CHECK(f.omega2 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(f.omega3 == doctest::Approx(20000.0));
  f = rabi(0.5, p);
  CHECK(f.omega2 == doctest::Approx(-2000.0));
  CHECK(f.omega3 == 0.0);
}

TEST_CASE("mixing angles at a quarter period") {
  const auto m = angles(0.25, lattice(0.1, 0.0));
  CHECK(m.phi == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::cos(m.theta) == doctest::Approx(1.0 / std::sqrt(1.01)).epsilon(1e-14));
}

TEST_CASE("analytic angle derivatives match finite differences") {
  for (double alpha : {0.0, pi / 12, pi / 4, 85.0 * pi / 180}) {
    const auto p = lattice(0.1, alpha);
    const Oracle o(p);
    for (double x : {0.0, 0.013, 0.1, 0.25, 0.37, 0.5, 0.71}) {
      const auto m = angles<long double>(x, p);
      const long double h = 1e-5L;
      const long double dth = deriv([&](long double y) { return o.theta(y); }, x, h);
      const long double dph = deriv([&](long double y) { return o.phi(y); }, x, h);
      CHECK(double(m.dtheta) == doctest::Approx(double(dth)).epsilon(1e-8));
      CHECK(double(m.dphi) == doctest::Approx(double(dph)).epsilon(1e-8));
    }
  }
}

TEST_CASE("internal frame is orthonormal and dark states decouple") {
  const auto p = lattice(0.1, pi / 5);
  for (double x : {0.0, 0.05, 0.2, 0.5, 0.83}) {
    const auto fr = internal_frame(x, p);
    const auto f = rabi(x, p);
    const Eigen::Vector3d om(f.omega1, f.omega2, f.omega3);
    CHECK(fr.dark1.dot(fr.dark2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(fr.bright.dot(fr.dark1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(fr.bright.dot(fr.dark2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(fr.dark1.norm() == doctest::Approx(1.0));
    CHECK(fr.dark2.norm() == doctest::Approx(1.0));
    CHECK(std::abs(om.dot(fr.dark1)) < 1e-10 * om.norm());
    CHECK(std::abs(om.dot(fr.dark2)) < 1e-10 * om.norm());
    CHECK(om.normalized().dot(fr.bright) == doctest::Approx(1.0));
  }
}

TEST_CASE("dark2 at alpha = pi/2 near the node") {
  const auto p = lattice(0.1, pi / 2);
  const auto fr = internal_frame(1e-9, p);
  const double th = angles(1e-9, p).theta;
  CHECK(fr.dark2(0) == doctest::Approx(std::cos(th)).epsilon(1e-7));
  CHECK(std::abs(fr.dark2(1)) < 1e-7);
  CHECK(fr.dark2(2) == doctest::Approx(-std::sin(th)));
}

TEST_CASE("scalar potential is rank one with null vector (c2, -c1)") {
  const auto p = lattice(0.1, pi / 3);
  for (double x : {0.0, 0.01, 0.12, 0.3, 0.49}) {
    const auto g = geometric_potentials(x, p);
    const Eigen::Vector2d null(g.c2, -g.c1);
    CHECK((g.v_mat * null).norm() <= 1e-12 * (g.v_mat.norm() * null.norm() + 1e-300));
    CHECK(std::abs(g.v_mat.determinant()) <= 1e-12 * g.v_mat.squaredNorm() + 1e-300);
  }
}

TEST_CASE("c2 is suppressed away from the barriers") {
  const auto p = lattice(0.15, 0.0);
  const Oracle o(p);
  const long double h = 1e-6L;
  const auto c2 = [&](long double x) { return -deriv([&](long double y) { return o.theta(y); }, x, h); };
  const double at_node = std::abs(double(c2(0.0L)));
  const double at_quarter = std::abs(double(c2(0.25L)));
  CHECK(std::isfinite(at_quarter));
  CHECK(at_node / at_quarter > 10.0);
  CHECK(std::abs(geometric_potentials(0.25, p).c2) == doctest::Approx(at_quarter).epsilon(1e-7));
}

TEST_CASE("closed-form barrier equals theta'^2 / 2m") {
  for (double alpha : {0.0, pi / 4, 1.3}) {
    const auto p = lattice(0.1, alpha);
    for (double x : {0.0, 0.004, 0.02, 0.11, 0.25, 0.4}) {
      const auto g = geometric_potentials(x, p);
      CHECK(barrier_approx(x, p).exact == doctest::Approx(g.c2 * g.c2 / (pi * pi)).epsilon(1e-10));
    }
  }
}

TEST_CASE("geometric potentials have period a/2") {
  const auto p = lattice(0.1, 0.7);
  for (double x : {0.03, 0.2, 0.41}) {
    const auto g0 = geometric_potentials(x, p);
    const auto g1 = geometric_potentials(x + 0.5, p);
    CHECK(g1.a_y == doctest::Approx(g0.a_y).epsilon(1e-9));
    CHECK((g1.v_mat - g0.v_mat).norm() <= 1e-9 * g0.v_mat.norm());
  }
}

TEST_CASE("Lorentzian barrier peak") {
  for (double et : {0.05, 0.1, 0.3}) CHECK(single_barrier(0.0, et) == doctest::Approx(4.0 / (et * et)));
}

TEST_CASE("gamma0 against an independent Gauss-Legendre oracle") {
  // 5-point Gauss-Legendre, composite over 4000 panels, of phi' cos(theta) from the test-side model.
  const double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                           0.9061798459386640};
  const double weights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                             0.2369268850561891};
  for (double alpha : {0.0, pi / 6, pi / 3}) {
    const auto p = lattice(0.1, alpha);
    const Oracle o(p);
    auto integrand = [&](long double x) {
      const long double dph = deriv([&](long double y) { return o.phi(y); }, x, 1e-5L);
      return double(dph * std::cos(o.theta(x)));
    };
    const int panels = 4000;
    const double h = 0.5 / panels;
    double acc = 0.0;
    for (int k = 0; k < panels; ++k)
      for (int j = 0; j < 5; ++j) acc += 0.5 * h * weights[j] * integrand(h * (k + 0.5) + 0.5 * h * nodes[j]);
    const auto g = gamma0(p);
    CHECK(g.value == doctest::Approx(-acc).epsilon(1e-8));
    CHECK(g.error_estimate < 1e-8);
  }
}

TEST_CASE("gamma0 limits") {
  CHECK(std::abs(gamma0(lattice(0.1, 0.0)).value - pi / 2) < 0.15);
  CHECK(std::abs(gamma0(lattice(0.1, pi / 2)).value) < 1e-6);
  CHECK(gamma0_zeroth_order(lattice(0.1, 0.0)) == doctest::Approx(pi / 2));
}

}

TEST_SUITE("barrier_area") {

// Area under the exact barrier over one period cell versus the Lorentzian-squared model,
// which integrates to 1/eps_tilde on the real line.
TEST_CASE("exact and Lorentzian barrier areas agree within 5% at eps = 0.05") {
  const auto p = lattice(0.05, 0.0);
  const auto ex = simpson_richardson([&](double x) { return barrier_approx(x, p).exact; }, -0.25, 0.25, 1 << 18);
  const double model = 1.0 / p.eps_tilde();
  MESSAGE("exact area " << ex.value << ", model area " << model << ", ratio " << ex.value / model);
  CHECK(std::abs(ex.value - model) / model < 0.05);
}

}

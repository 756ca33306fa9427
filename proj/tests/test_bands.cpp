#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tripod/bands.hpp"
#include "tripod/compare.hpp"
#include "tripod/errors.hpp"
#include "tripod/realspace.hpp"

using namespace tripod;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

LatticeParams fig1(int n_h = 64) {
  LatticeParams p;
  p.eps = 0.1;
  p.omega_p = 2000;
  p.delta = 2000;
  p.gamma = 1000;
  p.n_harmonics = n_h;
  p.n_q = 16;
  p.n_bands = 4;
  return validate(p);
}

// Sorted free energies (q + k)^2 / pi^2 over the given wavenumbers.
std::vector<double> free_levels(double q, const std::vector<double>& ks) {
  std::vector<double> e;
  for (double k : ks) e.push_back((q + k) * (q + k) / (pi * pi));
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

TEST_SUITE("basis") {

TEST_CASE("dimensions and channel momenta") {
  LatticeParams p;
  p.n_harmonics = 8;
  auto b = build_basis(0.3, p, Problem::Full);
  CHECK(b.dim() == 4 * 17);
  CHECK(b.channels() == 4);
  b = build_basis(0.3, p, Problem::Dark);
  CHECK(b.dim() == 2 * 17);
  // n_harmonics = 1 bypasses validate on purpose
  LatticeParams tiny = p;
  tiny.n_harmonics = 1;
  CHECK(build_basis(0.0, tiny, Problem::Full).dim() == 12);

  b = build_basis(0.0, p, Problem::Full);
  for (int i = 0; i < b.block(); ++i) {
    const double k2 = b.momenta[2](i) / (4 * pi);
    CHECK(k2 == doctest::Approx(std::round(k2)));
    const double k0 = (b.momenta[0](i) / (2 * pi) - 1) / 2;
    CHECK(k0 == doctest::Approx(std::round(k0)));
  }
}

TEST_CASE("q outside the extended zone is rejected") {
  LatticeParams p;
  CHECK_THROWS_AS(build_basis(-2 * pi, p, Problem::Full), ValidationError);
  CHECK_THROWS_AS(build_basis(7.0, p, Problem::Dark), ValidationError);
  CHECK_NOTHROW(build_basis(2 * pi, p, Problem::Dark));
}

}

TEST_SUITE("bands") {

TEST_CASE("full Hamiltonian: only |0> carries the decay") {
  auto p = fig1(8);
  const auto h = full_hamiltonian(0.7, p);
  const CMatrix<double> anti = (h - h.adjoint()) / cplx(0, 2);
  const int m = 17;
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) {
      const cplx expect = (i == j && i < m) ? cplx(-0.5 * p.gamma) : cplx(0.0);
      CHECK(std::abs(anti(i, j) - expect) < 1e-12);
    }
  p.gamma = 0;
  const auto hh = full_hamiltonian(0.7, p);
  CHECK(detail::exactly_hermitian(hh));
}

TEST_CASE("weak fields: lowest full band is the free parabola on the ground channels") {
  LatticeParams p;
  p.eps = 1.0;
  p.omega_p = 1e-6;
  p.delta = 1000;
  p.n_harmonics = 8;
  p.n_q = 16;
  p.n_bands = 4;
  p = validate(p);
  const auto set = full_bands(p);
  for (int iq = 0; iq < set.n_q(); ++iq) {
    const double q = set.q_grid[static_cast<std::size_t>(iq)];
    std::vector<double> ks;
    for (int n = -8; n <= 8; ++n) {
      ks.push_back(2 * pi * (2 * n + 1));  // |1>
      ks.push_back(4 * pi * n);            // |2>
      ks.push_back(4 * pi * n);            // |3>
    }
    const auto e = free_levels(q, ks);
    for (int s = 0; s < 4; ++s) CHECK(set.energies(iq, s).real() == doctest::Approx(e[s]).epsilon(1e-6));
  }
}

TEST_CASE("zero geometric potentials: dark bands are folded free bands") {
  LatticeParams p;
  p.n_harmonics = 8;
  p.n_bands = 6;
  p.n_q = 16;
  p = validate(p);
  DarkFourier f;
  for (auto* v : {&f.a_y, &f.a_y2, &f.v11, &f.v12, &f.v22}) *v = Eigen::VectorXcd::Zero(p.n_x);
  const auto set = dark_bands(p, f);
  for (int iq = 0; iq < set.n_q(); ++iq) {
    const double q = set.q_grid[static_cast<std::size_t>(iq)];
    std::vector<double> ks;
    for (int n = -8; n <= 8; ++n) ks.insert(ks.end(), 2, 4 * pi * n);
    const auto e = free_levels(q, ks);
    for (int s = 0; s < 6; ++s) CHECK(set.energies(iq, s).real() == doctest::Approx(e[s]).epsilon(1e-12));
  }
}

TEST_CASE("dark Fourier tail check") {
  auto p = fig1(8);
  CHECK_THROWS_AS(dark_fourier(p), NumericalError);
  p = fig1(64);
  const auto f = dark_fourier(p);
  CHECK(f.tail_weight < 1e-6);
  // real potentials on the a/2 grid give Hermitian coefficient sequences
  for (int d = 1; d < 20; ++d) CHECK(std::abs(f.at(f.v22, d) - std::conj(f.at(f.v22, -d))) < 1e-12);
}

TEST_CASE("time-reversal symmetry without decay") {
  // the antiperiodic harmonic set is not symmetric about k = 0, so this needs a converged basis
  auto p = fig1(64);
  p.gamma = 0;
  p.alpha = pi / 4;
  const auto full = full_bands(p);
  CHECK(symmetry_defect(full, 4) < 1e-9);
  const auto dark = dark_bands(p);
  CHECK(symmetry_defect(dark, 4) < 1e-9);
}

TEST_CASE("full solver keeps dark-like states only") {
  const auto set = full_bands(fig1(24));
  CHECK(set.excited_weight.maxCoeff() < 0.05);
  for (int iq = 0; iq < set.n_q(); ++iq)
    for (int s = 1; s < set.n_bands(); ++s)
      CHECK(set.energies(iq, s - 1).real() <= set.energies(iq, s).real());
}

TEST_CASE("thread count does not change results") {
  BandOptions one, two;
  one.threads = 1;
  two.threads = 2;
  const auto p = fig1(16);
  const auto a = full_bands(p, one);
  const auto b = full_bands(p, two);
  CHECK(a.energies == b.energies);
  for (int iq = 0; iq < a.n_q(); ++iq) CHECK(a.states[iq] == b.states[iq]);
}

TEST_CASE("band tracking keeps the energy multiset per q") {
  auto p = fig1(16);
  p.gamma = 0;
  BandOptions opt;
  const auto plain = dark_bands(p, opt);
  opt.track = true;
  const auto tracked = dark_bands(p, opt);
  for (int iq = 0; iq < plain.n_q(); ++iq) {
    std::vector<double> a, b;
    for (int s = 0; s < plain.n_bands(); ++s) {
      a.push_back(plain.energies(iq, s).real());
      b.push_back(tracked.energies(iq, s).real());
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]));
  }
}

}

TEST_SUITE("realspace") {

TEST_CASE("single coefficient is a plane wave") {
  LatticeParams p;
  p.n_harmonics = 8;
  SpinorBlochState st;
  st.q = 0.9;
  st.basis = build_basis(st.q, p, Problem::Full);
  st.coeffs = Eigen::VectorXcd::Zero(st.basis.dim());
  const int row = st.basis.index(2, 10);
  st.coeffs(row) = 1.0;
  const double k = st.q + st.basis.momenta[2](10);
  const std::vector<double> xs{0.0, 0.1, 0.37, 0.8};
  const auto r = reconstruct_realspace(st, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(r.values(i, 2) - std::polar(1.0, k * xs[i])) < 1e-13);
    CHECK(std::abs(r.values(i, 0)) == 0.0);
  }
}

TEST_CASE("norm, parity and agreement of the two reconstructions") {
  const auto p = fig1(24);
  BandOptions opt;
  opt.q_grid = {-1.1, 0.4, 2 * pi};
  const auto set = full_bands(p, opt);
  for (int iq = 0; iq < 3; ++iq)
    for (int s = 1; s <= 3; ++s) {
      const auto st = set.state(iq, s);
      const int n = 256;
      const auto g = sample_cell(st, n);
      CHECK(g.squaredNorm() / n == doctest::Approx(1.0).epsilon(1e-9));
      // channels 0, 1 flip sign under x -> x + a/2; channels 2, 3 do not
      for (int m = 0; m < n / 2; m += 17) {
        CHECK(std::abs(g(m + n / 2, 0) + g(m, 0)) < 1e-10);
        CHECK(std::abs(g(m + n / 2, 1) + g(m, 1)) < 1e-10);
        CHECK(std::abs(g(m + n / 2, 2) - g(m, 2)) < 1e-10);
        CHECK(std::abs(g(m + n / 2, 3) - g(m, 3)) < 1e-10);
      }
      const std::vector<double> xs{0.0, 5.0 / n, 100.0 / n};
      const auto r = reconstruct_realspace(st, xs, false);
      CHECK(std::abs(r.values(1, 3) - g(5, 3)) < 1e-10);
      CHECK(std::abs(r.values(2, 1) - g(100, 1)) < 1e-10);
    }
}

TEST_CASE("low bands live in the dark sector") {
  const auto p = fig1(64);
  BandOptions opt;
  opt.q_grid = {-pi, 0.5, 2 * pi};
  const auto set = full_bands(p, opt);
  const auto frames = frame_grid(p, 1024);
  // Oracle: direct-sum reconstruction projected on a dark basis built from the fields here.
  const int n = 4096;
  std::vector<double> xs(n);
  for (int m = 0; m < n; ++m) xs[m] = (m + 0.5) / n;
  for (int iq = 0; iq < 3; ++iq)
    for (int s = 1; s <= 3; ++s) {
      const auto st = set.state(iq, s);
      const auto r = reconstruct_realspace(st, xs, false);
      double dark = 0.0;
      for (int m = 0; m < n; ++m) {
        const double x = xs[m];
        const Eigen::Vector3d om(p.omega_p, p.omega_p * std::cos(2 * pi * x + p.alpha),
                                 p.omega_c() * std::sin(2 * pi * x));
        const Eigen::Vector3cd ground(r.values(m, 1), r.values(m, 2), r.values(m, 3));
        const Eigen::Vector3cd b = om.normalized().cast<cplx>();
        dark += ground.squaredNorm() - std::norm(b.dot(ground));
      }
      dark /= n;
      const auto pop = populations(st, frames);
      CHECK(dark > 0.99);
      CHECK(pop.d1 + pop.d2 == doctest::Approx(dark).epsilon(1e-6));
      CHECK(pop.total() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

}

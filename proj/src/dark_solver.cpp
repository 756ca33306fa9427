#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "tripod/bands.hpp"
#include "tripod/errors.hpp"
#include "tripod/optical.hpp"
#include "tripod/parallel.hpp"

namespace tripod {

using cplx = std::complex<double>;

namespace {

Eigen::VectorXcd fourier(Eigen::FFT<double>& fft, const std::vector<double>& samples) {
  std::vector<cplx> out;
  fft.fwd(out, samples);
  Eigen::VectorXcd f(static_cast<Eigen::Index>(out.size()));
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (std::size_t i = 0; i < out.size(); ++i) f(static_cast<Eigen::Index>(i)) = out[i] * inv;
  return f;
}

}  // namespace

DarkFourier dark_fourier(const LatticeParams& p, double max_tail) {
  const int nx = p.n_x;
  const int cutoff = 2 * p.n_harmonics;
  if (2 * cutoff + 1 > nx)
    throw ValidationError("n_x=" + std::to_string(nx) + " too small for n_harmonics=" +
                          std::to_string(p.n_harmonics));
  std::vector<double> ay(nx), ay2(nx), v11(nx), v12(nx), v22(nx);
  for (int i = 0; i < nx; ++i) {
    const double x = 0.5 * p.a * i / nx;
    const auto g = optics::geometric_potentials(x, p);
    ay[i] = g.a_y;
    ay2[i] = g.a_y * g.a_y;
    v11[i] = g.v_mat(0, 0);
    v12[i] = g.v_mat(0, 1);
    v22[i] = g.v_mat(1, 1);
  }
  Eigen::FFT<double> fft;
  DarkFourier f;
  f.a_y = fourier(fft, ay);
  f.a_y2 = fourier(fft, ay2);
  f.v11 = fourier(fft, v11);
  f.v12 = fourier(fft, v12);
  f.v22 = fourier(fft, v22);

  double total = 0.0, tail = 0.0;
  for (int d = -nx / 2 + 1; d <= nx / 2; ++d) {
    const double w = std::norm(f.at(f.v11, d)) + 2.0 * std::norm(f.at(f.v12, d)) +
                     std::norm(f.at(f.v22, d));
    total += w;
    if (std::abs(d) > cutoff) tail += w;
  }
  f.tail_weight = total > 0.0 ? tail / total : 0.0;
  if (f.tail_weight > max_tail)
    throw NumericalError("dark solver: potential tail weight " + std::to_string(f.tail_weight) +
                         " beyond the basis cutoff; increase n_harmonics");
  return f;
}

CMatrix<double> dark_hamiltonian(double q, const LatticeParams& p, const DarkFourier& f) {
  const PlaneWaveBasis b = build_basis(q, p, Problem::Dark);
  const int m = b.block();
  const Eigen::VectorXd& k = b.momenta[0];
  CMatrix<double> h = CMatrix<double>::Zero(b.dim(), b.dim());
  const cplx I(0.0, 1.0);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i <= j; ++i) {
      const int d = i - j;
      const cplx a2 = f.at(f.a_y2, d) * kKineticPrefactor;
      // -(1/2m)(p A + A p) with A = a_y sigma_y, sigma_y = [[0, -i], [i, 0]]
      const cplx cross = -(2.0 * q + k(i) + k(j)) * kKineticPrefactor * f.at(f.a_y, d);
      const double kin = (i == j) ? (q + k(i)) * (q + k(i)) * kKineticPrefactor : 0.0;
      h(i, j) = kin + a2 + f.at(f.v11, d);
      h(m + i, m + j) = kin + a2 + f.at(f.v22, d);
      h(i, m + j) = -I * cross + f.at(f.v12, d);
      if (i != j) {
        const cplx cross_t = -(2.0 * q + k(j) + k(i)) * kKineticPrefactor * f.at(f.a_y, -d);
        h(j, m + i) = -I * cross_t + f.at(f.v12, -d);
      }
    }
  }
  h.triangularView<Eigen::StrictlyLower>() = h.adjoint();
  return h;
}

BlochBandSet dark_bands(const LatticeParams& p, const BandOptions& opt) {
  return dark_bands(p, dark_fourier(p), opt);
}

BlochBandSet dark_bands(const LatticeParams& p, const DarkFourier& f, const BandOptions& opt) {
  BlochBandSet set;
  set.method = Method::Dark;
  set.params = p;
  set.q_grid = opt.q_grid.empty() ? extended_zone_grid(p.n_q) : opt.q_grid;
  const int nq = set.n_q();
  const int nb = p.n_bands;
  set.energies.resize(nq, nb);
  set.excited_weight = Eigen::MatrixXd::Zero(nq, nb);
  set.states.resize(static_cast<std::size_t>(nq));

  parallel_for(nq, resolve_threads(opt.threads), [&](int iq) {
    const double q = set.q_grid[static_cast<std::size_t>(iq)];
    const CMatrix<double> h = dark_hamiltonian(q, p, f);
    EigOptions eo;
    eo.vectors = opt.vectors;
    eo.residuals = opt.vectors;
    const auto r = eig_dense(h, eo);
    set.energies.row(iq) = r.eigenvalues.head(nb).transpose();
    if (opt.vectors) set.states[static_cast<std::size_t>(iq)] = r.eigenvectors.leftCols(nb);
  });
  if (opt.track) track_bands(set);
  return set;
}

}  // namespace tripod

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "tripod/bands.hpp"
#include "tripod/errors.hpp"
#include "tripod/parallel.hpp"

namespace tripod {

using cplx = std::complex<double>;

CMatrix<double> full_hamiltonian(double q, const LatticeParams& p) {
  const PlaneWaveBasis b = build_basis(q, p, Problem::Full);
  const int m = b.block();
  CMatrix<double> h = CMatrix<double>::Zero(b.dim(), b.dim());

  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < m; ++i) {
      const double k = q + b.momenta[c](i);
      h(b.index(c, i), b.index(c, i)) = k * k * kKineticPrefactor;
    }
  for (int i = 0; i < m; ++i) h(b.index(0, i), b.index(0, i)) += cplx(-p.delta, -0.5 * p.gamma);

  // <0|V|j> = Omega_j(x)/2. Omega_1 is constant and couples the two antiperiodic channels;
  // Omega_2, Omega_3 carry exp(+-i 2 pi x) and couple antiperiodic to periodic harmonics.
  const cplx c2_up = 0.25 * p.omega_p * std::polar(1.0, p.alpha);   // k0 - k2 = +2pi
  const cplx c2_dn = 0.25 * p.omega_p * std::polar(1.0, -p.alpha);  // k0 - k2 = -2pi
  const cplx c3_up = p.omega_c() / cplx(0.0, 4.0);
  const cplx c3_dn = -c3_up;
  for (int i = 0; i < m; ++i) {
    h(b.index(0, i), b.index(1, i)) = 0.5 * p.omega_p;
    h(b.index(0, i), b.index(2, i)) = c2_up;
    h(b.index(0, i), b.index(3, i)) = c3_up;
    if (i + 1 < m) {
      h(b.index(0, i), b.index(2, i + 1)) = c2_dn;
      h(b.index(0, i), b.index(3, i + 1)) = c3_dn;
    }
  }
  h.triangularView<Eigen::StrictlyLower>() = h.adjoint();
  return h;
}

BlochBandSet full_bands(const LatticeParams& p, const BandOptions& opt) {
  BlochBandSet set;
  set.method = Method::Full;
  set.params = p;
  set.q_grid = opt.q_grid.empty() ? extended_zone_grid(p.n_q) : opt.q_grid;
  const int nq = set.n_q();
  const int nb = p.n_bands;
  set.energies.resize(nq, nb);
  set.excited_weight.resize(nq, nb);
  set.states.resize(static_cast<std::size_t>(nq));

  parallel_for(nq, resolve_threads(opt.threads), [&](int iq) {
    const double q = set.q_grid[static_cast<std::size_t>(iq)];
    const CMatrix<double> h = full_hamiltonian(q, p);
    const int m = 2 * p.n_harmonics + 1;
    EigOptions eo;
    eo.residuals = false;
    const auto r = eig_dense(h, eo);
    const double bound = eo.residual_tol * matrix_scale(h);

    Eigen::MatrixXcd kept(h.rows(), opt.vectors ? nb : 0);
    int found = 0;
    for (Eigen::Index k = 0; k < r.eigenvalues.size() && found < nb; ++k) {
      const double w0 = r.eigenvectors.col(k).head(m).squaredNorm();
      if (w0 >= opt.excited_weight_max) continue;
      const CVector<double> v = r.eigenvectors.col(k);
      const double res = pair_residual(h, r.eigenvalues(k), v);
      if (res > bound)
        throw NumericalError("full solver: residual " + std::to_string(res) + " at q=" +
                             std::to_string(q) + " exceeds " + std::to_string(bound));
      set.energies(iq, found) = r.eigenvalues(k);
      set.excited_weight(iq, found) = w0;
      if (opt.vectors) kept.col(found) = v;
      ++found;
    }
    if (found < nb)
      throw NumericalError("full solver: only " + std::to_string(found) +
                           " dark-like states below the excited-weight threshold at q=" +
                           std::to_string(q));
    set.states[static_cast<std::size_t>(iq)] = std::move(kept);
  });
  if (opt.track) track_bands(set);
  return set;
}

}  // namespace tripod

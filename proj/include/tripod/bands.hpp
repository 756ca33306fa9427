#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tripod/basis.hpp"
#include "tripod/eigen_engine.hpp"
#include "tripod/params.hpp"

namespace tripod {

enum class Method { Full, Dark };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

/// One Bloch eigenvector: unit-norm channel-resolved Fourier coefficients of the periodic part g(x).
struct SpinorBlochState {
  double q = 0.0;
  int band = 1;  ///< 1-based
  std::complex<double> energy;
  PlaneWaveBasis basis;
  Eigen::VectorXcd coeffs;

  /// Coefficients of one channel, ordered like basis.momenta[channel].
  Eigen::VectorXcd channel(int c) const { return coeffs.segment(basis.index(c, 0), basis.block()); }
};

struct BlochBandSet {
  Method method = Method::Full;
  LatticeParams params;
  std::vector<double> q_grid;
  Eigen::MatrixXcd energies;             ///< n_q x n_bands
  std::vector<Eigen::MatrixXcd> states;  ///< per q: dim x n_bands
  Eigen::MatrixXd excited_weight;        ///< n_q x n_bands, weight in |0> (zero for dark)

  int n_q() const { return static_cast<int>(q_grid.size()); }
  int n_bands() const { return static_cast<int>(energies.cols()); }
  Problem problem() const { return method == Method::Full ? Problem::Full : Problem::Dark; }
  /// s is 1-based.
  SpinorBlochState state(int iq, int s) const;
};

struct BandOptions {
  std::vector<double> q_grid;            ///< empty: extended_zone_grid(params.n_q)
  double excited_weight_max = 0.05;      ///< full solver: admit only states this far from |0>
  bool track = false;                    ///< reorder bands along q by eigenvector overlap
  bool vectors = true;
  int threads = 0;                       ///< 0: resolve_threads default
};

/// Fourier coefficients of the dark-sector potentials on the a/2-periodic grid,
/// indexed by d mod n_x for the factor exp(i 4 pi d x).
struct DarkFourier {
  Eigen::VectorXcd a_y, a_y2, v11, v12, v22;
  double tail_weight = 0.0;  ///< relative spectral weight of v_mat beyond |d| = 2 n_harmonics

  std::complex<double> at(const Eigen::VectorXcd& f, int d) const {
    const auto n = static_cast<int>(f.size());
    return f(((d % n) + n) % n);
  }
};

/// Throws NumericalError("increase n_harmonics") when tail_weight > max_tail.
DarkFourier dark_fourier(const LatticeParams& p, double max_tail = 1e-6);

CMatrix<double> full_hamiltonian(double q, const LatticeParams& p);
CMatrix<double> dark_hamiltonian(double q, const LatticeParams& p, const DarkFourier& f);

BlochBandSet full_bands(const LatticeParams& p, const BandOptions& opt = {});
BlochBandSet dark_bands(const LatticeParams& p, const BandOptions& opt = {});
BlochBandSet dark_bands(const LatticeParams& p, const DarkFourier& f, const BandOptions& opt = {});
BlochBandSet solve_bands(Method m, const LatticeParams& p, const BandOptions& opt = {});

/// Greedy overlap-continuity reordering of bands along the q grid.
void track_bands(BlochBandSet& set);

/// Index of q in the grid, or -1.
int find_q(const std::vector<double>& grid, double q, double tol = 1e-9);

}  // namespace tripod

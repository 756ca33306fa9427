#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "tripod/params.hpp"

namespace tripod {

struct ScatterAmplitudes {
  double energy = 0.0;  ///< E_R
  double Q = 0.0;       ///< sqrt(2 m E), 1/a
  std::complex<double> t, r;
  double validity = 0.0;  ///< a Q eps_tilde / pi^2; the amplitudes assume this is small
};

/// Single-barrier amplitudes with t^-1 = -1 + i pi^2 / (a Q eps_tilde). Throws ValidationError for E <= 0.
ScatterAmplitudes tr_amplitudes(double energy, double eps_tilde);
inline ScatterAmplitudes tr_amplitudes(double energy, const LatticeParams& p) {
  return tr_amplitudes(energy, p.eps_tilde());
}

/// Barrier transfer matrix [[1/t, r*/t*], [r/t, 1/t*]].
Eigen::Matrix2cd transfer_matrix(const ScatterAmplitudes& s);

/// W_Q = exp(i gamma0 sigma_y) blockdiag(I_Q, I_Q M), I_Q = diag(exp(-iQa/2), exp(iQa/2)).
Eigen::Matrix4cd build_WQ(double Q, double eps_tilde, double gamma0);
/// Same with an explicit barrier transfer matrix.
Eigen::Matrix4cd build_WQ(double Q, const Eigen::Matrix2cd& m, double gamma0);

struct DispersionPoint {
  int q_index = 0;  ///< position in the Q grid
  double Q = 0.0, E = 0.0, q = 0.0;
  int branch = -1;
  double lambda_mod = 1.0;
  double residual = 0.0;
};

struct DispersionPointSet {
  std::vector<DispersionPoint> points;
  double gamma0 = 0.0;
  double eps_tilde = 0.0;
  int n_branches = 0;
  int evanescent = 0;  ///< eigenvalues rejected as non-unimodular
};

struct ScatterOptions {
  double unimodular_tol = 1e-6;
  double branch_jump = 0.1;          ///< E_R, in the (q a / pi, E) metric
  std::optional<double> gamma0;      ///< override; default from quadrature
  bool gamma0_approx = false;        ///< use phi(0) - phi(a/2) instead of quadrature
  int threads = 0;
};

/// Folds any angle-derived quasi-momentum into (-2pi, 2pi].
double fold_extended(double q);

DispersionPointSet dispersion(const LatticeParams& p, const std::vector<double>& Q_grid,
                              const ScatterOptions& opt = {});

/// Two-component problem -I_Q^2 M psi = exp(-iqa) psi; each root is stored at q and q + 2pi.
DispersionPointSet reduced_dispersion_alpha0(const LatticeParams& p, const std::vector<double>& Q_grid,
                                             const ScatterOptions& opt = {});

/// Q grid with n points on (0, qmax], uniform.
std::vector<double> uniform_Q_grid(double qmax, int n);

/// Smallest |E_curve(q) - E| over curve segments joining consecutive-Q points that bracket q.
/// Returns +inf if no segment covers q.
double curve_deviation(const DispersionPointSet& set, double q, double E, double max_dq = 0.5);

}  // namespace tripod

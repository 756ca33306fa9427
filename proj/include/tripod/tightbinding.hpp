#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "tripod/bands.hpp"

namespace tripod {

/// Cosine-series fit E_q = sum_v J_v cos(v q a / 2), v = 0..v_max.
struct HoppingFit {
  Eigen::VectorXcd J;     ///< J(v), E_R
  double residual = 0.0;  ///< max_q |E_q - fit|
  double bandwidth = 0.0; ///< max - min of Re E_q
};

/// Projection fit on a uniform extended-zone grid. Throws ValidationError otherwise.
HoppingFit extract_J(const std::vector<double>& q_grid, const Eigen::VectorXcd& energies, int v_max = 8);
HoppingFit extract_J(const BlochBandSet& bands, int s, int v_max = 8);

/// Evaluates the cosine series at q.
std::complex<double> tb_energy(const Eigen::VectorXcd& J, double q);

enum class SweepAxis { Alpha, Delta };

struct TightBindingTable {
  int band = 1;
  SweepAxis axis = SweepAxis::Alpha;
  Method method = Method::Full;
  std::vector<double> values;
  std::vector<HoppingFit> fits;
  /// Bracket [lo, hi] where Re J_2 changes sign, if any; refined by bisection for delta sweeps.
  std::optional<std::pair<double, double>> j2_sign_change;
};

struct SweepOptions {
  Method method = Method::Full;
  int v_max = 8;
  BandOptions bands;
  double bisection_tol = 50.0;  ///< E_R, delta sweeps only; <= 0 disables refinement
};

TightBindingTable sweep_alpha(const LatticeParams& p, const std::vector<double>& alphas, int s,
                              const SweepOptions& opt = {});
TightBindingTable sweep_delta(const LatticeParams& p, const std::vector<double>& deltas, int s,
                              const SweepOptions& opt = {});

}  // namespace tripod

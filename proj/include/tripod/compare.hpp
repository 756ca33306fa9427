#pragma once

#include <vector>

#include "tripod/bands.hpp"
#include "tripod/scatter.hpp"

namespace tripod {

struct BandDeviation {
  int band = 1;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double threshold = 0.0;  ///< absolute E_R, or relative to |E| when relative = true
  bool relative = false;
  double worst_ratio = 0.0;  ///< max over q of deviation / allowed deviation
  int points = 0;
  bool pass = false;
};

struct ComparisonReport {
  LatticeParams params;
  std::vector<BandDeviation> full_vs_dark;
  std::vector<BandDeviation> scatter_vs_dark;  ///< odd bands
  double symmetry_max = 0.0;                   ///< max |E_q - E_-q| of the full bands
  double symmetry_threshold = 1e-9;
  bool symmetry_pass = false;
  double gamma0 = 0.0;
  bool pass() const;
};

struct CompareOptions {
  int bands = 4;
  double band1_tol = 0.05;      ///< E_R
  double higher_rel_tol = 0.02; ///< fraction of |E_dark| for bands >= 2
  double scatter_tol = 0.05;    ///< E_R
  int n_Q = 4000;
  BandOptions band_options;
  ScatterOptions scatter_options;
};

/// max over q of |E_{q,s} - E_{-q,s}| for s <= max_band; q = 2pi (no partner) is skipped.
double symmetry_defect(const BlochBandSet& set, int max_band);

/// Pointwise |E_a - E_b| (real parts for the full band vs the Hermitian dark band).
BandDeviation band_deviation(const BlochBandSet& a, const BlochBandSet& b, int s, double tol, bool relative);

/// Pointwise distance from the dark band to the scattering curve.
BandDeviation scatter_deviation(const BlochBandSet& dark, const DispersionPointSet& disp, int s, double tol);

ComparisonReport compare(const LatticeParams& p, const CompareOptions& opt = {});

}  // namespace tripod

#pragma once

#include <numbers>
#include <string>
#include <vector>

namespace tripod {

/// Internal units: a = 1, hbar = 1, E_R = (pi/a)^2 / 2m = 1, so 2m = pi^2.
inline constexpr double kTwoMass = std::numbers::pi * std::numbers::pi;
inline constexpr double kKineticPrefactor = 1.0 / kTwoMass;

/// Symmetry maps applied while folding alpha into [0, pi/2].
struct AlphaFold {
  double raw = 0.0;          ///< value as supplied
  bool mirrored = false;     ///< alpha -> -alpha (complex-conjugate fields)
  bool reflected = false;    ///< alpha -> pi - alpha

  friend bool operator==(const AlphaFold&, const AlphaFold&) = default;
};

struct LatticeParams {
  double eps = 0.1;        ///< Omega_p / Omega_c
  double omega_p = 2000.0; ///< probe amplitude, E_R
  double alpha = 0.0;      ///< radians
  double delta = 0.0;      ///< detuning, E_R
  double gamma = 0.0;      ///< excited-state decay rate, E_R
  double a = 1.0;          ///< lattice constant, fixed to 1
  int n_harmonics = 64;
  int n_q = 256;
  int n_x = 8192;
  int n_bands = 6;

  AlphaFold alpha_fold{};

  double omega_c() const { return omega_p / eps; }
  /// Effective probe/control ratio entering the barrier shape and t/r amplitudes.
  double eps_tilde() const;

  friend bool operator==(const LatticeParams&, const LatticeParams&) = default;
};

/// Normalizes alpha and checks ranges. Throws ValidationError.
LatticeParams validate(LatticeParams params);

/// Reduces an arbitrary angle into [0, pi/2] via alpha -> -alpha and alpha -> pi - alpha.
AlphaFold fold_alpha(double alpha, double& folded);

/// Converts between raw frequency units and recoil units for a given E_R.
struct RecoilUnits {
  double recoil;  ///< E_R expressed in the raw unit
  double to_recoil(double raw) const { return raw / recoil; }
  double from_recoil(double e) const { return e * recoil; }
};

/// Uniform quasi-momentum grid over the extended zone (-2pi/a, 2pi/a], n points, endpoint included.
std::vector<double> extended_zone_grid(int n);

/// Parses "45deg" or a radian literal.
double parse_angle(const std::string& text);

}  // namespace tripod

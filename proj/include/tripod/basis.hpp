#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tripod/params.hpp"

namespace tripod {

enum class Parity { Periodic, Antiperiodic };  ///< under x -> x + a/2

/// Full problem: channels {|0>, |1>, |2>, |3>}. Dark problem: channels {D1, D2}.
enum class Problem { Full, Dark };

struct PlaneWaveBasis {
  double q = 0.0;
  int n_harmonics = 0;
  Problem problem = Problem::Full;
  std::vector<Parity> parity;            ///< per channel
  std::vector<Eigen::VectorXd> momenta;  ///< per channel, 2*n_harmonics+1 wavenumbers

  int channels() const { return static_cast<int>(parity.size()); }
  int block() const { return 2 * n_harmonics + 1; }
  int dim() const { return channels() * block(); }
  /// Row of (channel, harmonic index i in [0, block)).
  int index(int channel, int i) const { return channel * block() + i; }
};

/// Wavenumber of harmonic n in [-n_h, n_h] for a channel of the given parity.
inline double channel_momentum(Parity parity, int n) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return parity == Parity::Periodic ? 2.0 * two_pi * n : two_pi * (2 * n + 1);
}

/// Throws ValidationError if q lies outside (-2pi, 2pi].
PlaneWaveBasis build_basis(double q, const LatticeParams& p, Problem problem);

}  // namespace tripod

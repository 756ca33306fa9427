#include "tripod/basis.hpp"

#include <cmath>

#include "tripod/errors.hpp"

namespace tripod {

PlaneWaveBasis build_basis(double q, const LatticeParams& p, Problem problem) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!(q > -two_pi && q <= two_pi * (1.0 + 1e-14)))
    throw ValidationError("q=" + std::to_string(q) + " outside the extended zone (-2pi, 2pi]");
  PlaneWaveBasis b;
  b.q = q;
  b.n_harmonics = p.n_harmonics;
  b.problem = problem;
  if (problem == Problem::Full)
    b.parity = {Parity::Antiperiodic, Parity::Antiperiodic, Parity::Periodic, Parity::Periodic};
  else
    b.parity = {Parity::Periodic, Parity::Periodic};
  for (Parity par : b.parity) {
    Eigen::VectorXd k(b.block());
    for (int i = 0; i < b.block(); ++i) k(i) = channel_momentum(par, i - p.n_harmonics);
    b.momenta.push_back(std::move(k));
  }
  return b;
}

}  // namespace tripod

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tripod/bands.hpp"
#include "tripod/optical.hpp"

namespace tripod {

/// Channel wavefunctions sampled on a grid: values(i, c) for x[i] and channel c.
struct ChannelAmplitudes {
  std::vector<double> x;
  Eigen::MatrixXcd values;
};

/// psi_c(x) = exp(i q x) g_c(x) by direct summation (any grid). With bloch_phase = false, g_c(x).
ChannelAmplitudes reconstruct_realspace(const SpinorBlochState& state, const std::vector<double>& x,
                                        bool bloch_phase = true);

/// g_c on x_m = m a / n, m in [0, n), by inverse FFT. n must exceed the harmonic span.
Eigen::MatrixXcd sample_cell(const SpinorBlochState& state, int n);

/// Internal frame tabulated on x_m = m a / n.
struct FrameGrid {
  int n = 0;
  std::vector<optics::InternalFrame<double>> frames;
};
FrameGrid frame_grid(const LatticeParams& p, int n);

struct Populations {
  double d1 = 0.0, d2 = 0.0, bright = 0.0, excited = 0.0;
  double total() const { return d1 + d2 + bright + excited; }
};

/// Cell-averaged weights in {D1, D2, B, |0>}; for dark-sector states bright = excited = 0.
Populations populations(const SpinorBlochState& state, const FrameGrid& frames);

}  // namespace tripod

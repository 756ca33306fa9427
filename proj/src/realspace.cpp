#include "tripod/realspace.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "tripod/errors.hpp"

namespace tripod {

using cplx = std::complex<double>;

ChannelAmplitudes reconstruct_realspace(const SpinorBlochState& state, const std::vector<double>& x,
                                        bool bloch_phase) {
  const auto& b = state.basis;
  ChannelAmplitudes out;
  out.x = x;
  out.values = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(x.size()), b.channels());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const cplx phase = bloch_phase ? std::polar(1.0, state.q * xi) : cplx(1.0);
    for (int c = 0; c < b.channels(); ++c) {
      cplx acc = 0.0;
      for (int n = 0; n < b.block(); ++n) acc += state.coeffs(b.index(c, n)) * std::polar(1.0, b.momenta[c](n) * xi);
      out.values(static_cast<Eigen::Index>(i), c) = phase * acc;
    }
  }
  return out;
}

Eigen::MatrixXcd sample_cell(const SpinorBlochState& state, int n) {
  const auto& b = state.basis;
  const int span = 4 * b.n_harmonics + 3;
  if (n < span) throw ValidationError("sample_cell: grid of " + std::to_string(n) + " points cannot resolve the basis");
  Eigen::FFT<double> fft;
  Eigen::MatrixXcd g(n, b.channels());
  std::vector<cplx> spec(static_cast<std::size_t>(n)), out;
  for (int c = 0; c < b.channels(); ++c) {
    std::fill(spec.begin(), spec.end(), cplx(0.0));
    for (int i = 0; i < b.block(); ++i) {
      const long K = std::lround(b.momenta[c](i) / (2.0 * std::numbers::pi));
      spec[static_cast<std::size_t>(((K % n) + n) % n)] += state.coeffs(b.index(c, i));
    }
    fft.inv(out, spec);
    for (int m = 0; m < n; ++m) g(m, c) = out[static_cast<std::size_t>(m)] * static_cast<double>(n);
  }
  return g;
}

FrameGrid frame_grid(const LatticeParams& p, int n) {
  FrameGrid f;
  f.n = n;
  f.frames.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) f.frames.push_back(optics::internal_frame(p.a * m / n, p));
  return f;
}

Populations populations(const SpinorBlochState& state, const FrameGrid& frames) {
  Populations pop;
  const auto& b = state.basis;
  if (b.problem == Problem::Dark) {
    pop.d1 = state.channel(0).squaredNorm();
    pop.d2 = state.channel(1).squaredNorm();
    return pop;
  }
  pop.excited = state.channel(0).squaredNorm();
  const Eigen::MatrixXcd g = sample_cell(state, frames.n);
  for (int m = 0; m < frames.n; ++m) {
    const auto& fr = frames.frames[static_cast<std::size_t>(m)];
    const Eigen::Vector3cd ground(g(m, 1), g(m, 2), g(m, 3));
    pop.d1 += std::norm(fr.dark1.cast<cplx>().dot(ground));
    pop.d2 += std::norm(fr.dark2.cast<cplx>().dot(ground));
    pop.bright += std::norm(fr.bright.cast<cplx>().dot(ground));
  }
  pop.d1 /= frames.n;
  pop.d2 /= frames.n;
  pop.bright /= frames.n;
  return pop;
}

}  // namespace tripod

#include <cmath>
#include <vector>

#include "tripod/bands.hpp"
#include "tripod/errors.hpp"

namespace tripod {

std::string to_string(Method m) { return m == Method::Full ? "full" : "dark"; }

Method method_from_string(const std::string& s) {
  if (s == "full") return Method::Full;
  if (s == "dark") return Method::Dark;
  throw ValidationError("unknown method '" + s + "' (expected full or dark)");
}

SpinorBlochState BlochBandSet::state(int iq, int s) const {
  if (iq < 0 || iq >= n_q()) throw ValidationError("q index out of range");
  if (s < 1 || s > n_bands()) throw ValidationError("band index out of range");
  const auto& vecs = states[static_cast<std::size_t>(iq)];
  if (vecs.cols() < s) throw ValidationError("band set was computed without eigenvectors");
  SpinorBlochState st;
  st.q = q_grid[static_cast<std::size_t>(iq)];
  st.band = s;
  st.energy = energies(iq, s - 1);
  st.basis = build_basis(st.q, params, problem());
  st.coeffs = vecs.col(s - 1);
  return st;
}

BlochBandSet solve_bands(Method m, const LatticeParams& p, const BandOptions& opt) {
  return m == Method::Full ? full_bands(p, opt) : dark_bands(p, opt);
}

void track_bands(BlochBandSet& set) {
  const int nb = set.n_bands();
  for (int iq = 1; iq < set.n_q(); ++iq) {
    const auto& prev = set.states[static_cast<std::size_t>(iq - 1)];
    auto& cur = set.states[static_cast<std::size_t>(iq)];
    if (prev.cols() < nb || cur.cols() < nb) throw ValidationError("band tracking needs eigenvectors");
    const Eigen::MatrixXd ov = (prev.adjoint() * cur).cwiseAbs();
    std::vector<int> assign(static_cast<std::size_t>(nb), -1);
    std::vector<bool> used(static_cast<std::size_t>(nb), false);
    // Greedy: repeatedly take the globally largest remaining overlap.
    for (int step = 0; step < nb; ++step) {
      double best = -1.0;
      int bs = 0, bt = 0;
      for (int s = 0; s < nb; ++s) {
        if (assign[static_cast<std::size_t>(s)] >= 0) continue;
        for (int t = 0; t < nb; ++t)
          if (!used[static_cast<std::size_t>(t)] && ov(s, t) > best) {
            best = ov(s, t);
            bs = s;
            bt = t;
          }
      }
      assign[static_cast<std::size_t>(bs)] = bt;
      used[static_cast<std::size_t>(bt)] = true;
    }
    Eigen::MatrixXcd vecs(cur.rows(), nb);
    Eigen::RowVectorXcd e(nb);
    Eigen::RowVectorXd w(nb);
    for (int s = 0; s < nb; ++s) {
      const int t = assign[static_cast<std::size_t>(s)];
      vecs.col(s) = cur.col(t);
      e(s) = set.energies(iq, t);
      w(s) = set.excited_weight(iq, t);
    }
    cur = std::move(vecs);
    set.energies.row(iq) = e;
    set.excited_weight.row(iq) = w;
  }
}

int find_q(const std::vector<double>& grid, double q, double tol) {
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (std::abs(grid[i] - q) <= tol) return static_cast<int>(i);
  return -1;
}

}  // namespace tripod

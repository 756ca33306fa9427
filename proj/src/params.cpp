#include "tripod/params.hpp"

#include <cmath>
#include <string>

#include "tripod/errors.hpp"

namespace tripod {

using std::numbers::pi;

double LatticeParams::eps_tilde() const {
  return 0.5 * eps * std::sqrt(std::cos(2.0 * alpha) + 3.0);
}

AlphaFold fold_alpha(double alpha, double& folded) {
  AlphaFold fold{.raw = alpha};
  double x = std::remainder(alpha, 2.0 * pi);  // (-pi, pi]
  if (x < 0.0) {
    x = -x;
    fold.mirrored = true;
  }
  if (x > 0.5 * pi) {
    x = pi - x;
    fold.reflected = true;
  }
  folded = x;
  return fold;
}

LatticeParams validate(LatticeParams p) {
  if (!(p.eps > 0.0) || !std::isfinite(p.eps)) throw ValidationError("eps must be positive");
  if (!(p.omega_p > 0.0) || !std::isfinite(p.omega_p))
    throw ValidationError("omega_p must be positive");
  if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma))
    throw ValidationError("gamma must be non-negative");
  if (!std::isfinite(p.delta)) throw ValidationError("delta must be finite");
  if (!std::isfinite(p.alpha)) throw ValidationError("alpha must be finite");
  if (p.a != 1.0) throw ValidationError("a is fixed to 1 in internal units");
  if (p.n_harmonics < 8) throw ValidationError("n_harmonics must be >= 8");
  if (p.n_q < 16 || p.n_q % 2 != 0) throw ValidationError("n_q must be an even integer >= 16");
  if (p.n_x < 1024) throw ValidationError("n_x must be >= 1024");
  if (p.n_bands < 1) throw ValidationError("n_bands must be >= 1");
  // The dark-sector basis is the smaller of the two solver bases.
  if (p.n_bands > 2 * (2 * p.n_harmonics + 1))
    throw ValidationError("n_bands exceeds basis size");

  // Idempotence: an already folded angle keeps its original raw value.
  const bool already_folded = p.alpha >= 0.0 && p.alpha <= 0.5 * pi;
  if (!already_folded) {
    double folded = 0.0;
    AlphaFold fold = fold_alpha(p.alpha, folded);
    p.alpha = folded;
    p.alpha_fold = fold;
  } else {
    // keep the recorded fold only if it still describes this alpha
    double refold = 0.0;
    fold_alpha(p.alpha_fold.raw, refold);
    if (refold != p.alpha) p.alpha_fold = AlphaFold{.raw = p.alpha};
  }
  return p;
}

std::vector<double> extended_zone_grid(int n) {
  std::vector<double> q(static_cast<std::size_t>(n));
  const double step = 4.0 * pi / n;
  for (int j = 0; j < n; ++j) q[static_cast<std::size_t>(j)] = -2.0 * pi + step * (j + 1);
  return q;
}

double parse_angle(const std::string& text) {
  std::string s = text;
  double scale = 1.0;
  if (s.size() > 3 && s.compare(s.size() - 3, 3, "deg") == 0) {
    s.resize(s.size() - 3);
    scale = pi / 180.0;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("malformed angle '" + text + "'");
  }
  if (used != s.size()) throw ValidationError("malformed angle '" + text + "'");
  return value * scale;
}

}  // namespace tripod

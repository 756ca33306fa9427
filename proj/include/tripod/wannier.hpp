#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "tripod/bands.hpp"

namespace tripod {

enum class WannierMethod { Auto, Center, Shifted, LambdaLimit };

std::string to_string(WannierMethod m);
WannierMethod wannier_method_from_string(const std::string& s);

/// n_bar = (|1> - (-1)^n cos(alpha) |2>) / sqrt(1 + cos^2 alpha) and its in-plane orthogonal partner.
struct ProjectionVectors {
  Eigen::Vector3d nbar, nbar_perp;
  int n = 0;
  double alpha = 0.0;
};

ProjectionVectors projection_vectors(int n, const LatticeParams& p);

/// Multi-component Wannier function on a uniform supercell grid x_m = x0 + m dx.
/// Components are {D1, D2, B, |0>} for the full construction and {D1, D2} for the adiabatic one.
struct WannierFunction {
  int band = 1;
  int center = 0;
  WannierMethod method = WannierMethod::Center;
  int n_q = 0;
  int shift_sign = +1;  ///< sign used by the shifted functional
  double x_center = 0.0;
  double x0 = 0.0, dx = 0.0;
  Eigen::MatrixXcd components;  ///< rows: grid points
  Eigen::MatrixXcd channels;    ///< bare |0>..|3> amplitudes (full construction only)
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(components.rows()); }
  double x(int m) const { return x0 + m * dx; }
  double norm() const { return components.squaredNorm() * dx; }
  /// Grid points per a/2 translation.
  int half_period_points() const { return static_cast<int>(std::lround(0.5 / dx)); }
};

struct WannierOptions {
  WannierMethod method = WannierMethod::Auto;
  double lambda_alpha_threshold = 80.0 * std::numbers::pi / 180.0;  ///< even bands switch to lambda-limit above this
  int points_per_a = 256;
  double node_tol = 1e-10;
};

/// Resolves Auto: odd bands use center; even bands use shifted, or lambda-limit when alpha exceeds the threshold.
WannierMethod resolve_method(WannierMethod m, int band, double alpha, double threshold);

/// Wannier function of band s (1-based) centered on cell n from full-solver Bloch states.
/// Throws NumericalError("gauge-undefined ...") when the phase functional vanishes without a usable neighbour.
WannierFunction build_wannier(const BlochBandSet& bands, int s, int n, const WannierOptions& opt = {});

/// Two-component Wannier function from dark-solver states. Band 1 fixes W_D1 at the center real and
/// positive; even bands fix exp(iqa/4)(g_D1 + g_D2) a quarter period from the center.
WannierFunction adiabatic_wannier(const BlochBandSet& dark, int s, int n, const WannierOptions& opt = {});

/// Sum over components of the integral conj(w1) w2. Throws ValidationError on grid mismatch.
std::complex<double> overlaps(const WannierFunction& w1, const WannierFunction& w2);

/// Per-q phase functional after gauge fixing (diagnostic; should be real and non-negative).
std::vector<std::complex<double>> gauge_functionals(const BlochBandSet& bands, int s, int n,
                                                    const WannierOptions& opt = {});

/// <v|W(x)> over the ground channels {|1>, |2>, |3>} (full construction only).
Eigen::VectorXcd project_ground(const WannierFunction& w, const Eigen::Vector3d& v);

/// ||a - e^{i phi} b|| / ||a|| minimized over the global phase phi.
double aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// ||f(x_c + y) + f(x_c - y)|| / (2 ||f||) for one component: 0 if odd about the center, 1 if even.
double antisymmetry_defect(const WannierFunction& w, int component);

/// Norm fraction of the given components within |x - x_c| <= half_width.
double norm_within(const WannierFunction& w, const std::vector<int>& comps, double x_c, double half_width);

}  // namespace tripod

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include "tripod/errors.hpp"

namespace tripod {

template <typename Scalar = double>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar = double>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar = double>
struct EigenResult {
  CVector<Scalar> eigenvalues;
  CMatrix<Scalar> eigenvectors;              ///< unit 2-norm columns; empty if not requested
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> residuals;  ///< ||Hv - lambda v||; empty if not requested
};

struct EigOptions {
  bool vectors = true;
  bool residuals = true;
  int max_dim = 4096;
  bool detect_hermitian = true;  ///< exact-Hermitian input takes the self-adjoint path
  double residual_tol = 1e-9;    ///< relative to matrix_scale(H)
};

namespace detail {

/// LAPACK zgeev; throws NumericalError on failure.
void zgeev(const CMatrix<double>& a, bool vectors, CVector<double>& w, CMatrix<double>& vr);

template <typename Scalar>
bool exactly_hermitian(const CMatrix<Scalar>& h) {
  const auto n = h.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i <= j; ++i)
      if (h(i, j) != std::conj(h(j, i))) return false;
  return true;
}

[[noreturn]] void throw_nonconvergence(const CMatrix<double>& h, int info);

}  // namespace detail

/// ||H v - lambda v||_2 for one eigenpair.
template <typename Scalar>
Scalar pair_residual(const CMatrix<Scalar>& h, std::complex<Scalar> lambda, const CVector<Scalar>& v) {
  return (h * v - lambda * v).norm();
}

/// Row-sum norm used as the scale for residual bounds.
template <typename Scalar>
Scalar matrix_scale(const CMatrix<Scalar>& h) {
  return h.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Scales v to unit norm and rotates it so its largest-magnitude entry is real and positive.
template <typename Scalar>
void fix_phase(Eigen::Ref<CVector<Scalar>> v) {
  v /= v.norm();
  Eigen::Index imax = 0;
  Scalar best = -1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // strict comparison keeps the first index among exact ties
    if (std::abs(v(i)) > best) {
      best = std::abs(v(i));
      imax = i;
    }
  }
  v *= std::conj(v(imax)) / std::abs(v(imax));
  v(imax) = std::complex<Scalar>(v(imax).real(), 0);
}

/// Full spectrum of a dense complex square matrix, sorted by (real, imag) with deterministic phases.
template <typename Scalar = double>
EigenResult<Scalar> eig_dense(const CMatrix<Scalar>& h, const EigOptions& opt = {}) {
  const Eigen::Index n = h.rows();
  if (n != h.cols()) throw ValidationError("eig_dense: matrix is not square");
  if (n > opt.max_dim)
    throw ValidationError("eig_dense: dimension " + std::to_string(n) + " exceeds limit " +
                          std::to_string(opt.max_dim));
  if (!h.allFinite()) throw ValidationError("eig_dense: non-finite matrix entries");

  CVector<Scalar> w;
  CMatrix<Scalar> v;
  if (opt.detect_hermitian && detail::exactly_hermitian(h)) {
    Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(
        h, opt.vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
      if constexpr (std::is_same_v<Scalar, double>) detail::throw_nonconvergence(h, 1);
      throw NumericalError("eig_dense: self-adjoint solver did not converge");
    }
    w = es.eigenvalues().template cast<std::complex<Scalar>>();
    if (opt.vectors) v = es.eigenvectors();
  } else if constexpr (std::is_same_v<Scalar, double>) {
    detail::zgeev(h, opt.vectors, w, v);
  } else {
    Eigen::ComplexEigenSolver<CMatrix<Scalar>> es(h, opt.vectors);
    if (es.info() != Eigen::Success) throw NumericalError("eig_dense: QR iteration did not converge");
    w = es.eigenvalues();
    if (opt.vectors) v = es.eigenvectors();
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (w(a).real() != w(b).real()) return w(a).real() < w(b).real();
    return w(a).imag() < w(b).imag();
  });

  EigenResult<Scalar> r;
  r.eigenvalues.resize(n);
  if (opt.vectors) r.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    r.eigenvalues(k) = w(order[static_cast<std::size_t>(k)]);
    if (opt.vectors) {
      r.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
      fix_phase<Scalar>(r.eigenvectors.col(k));
    }
  }
  if (opt.vectors && opt.residuals) {
    r.residuals.resize(n);
    const CMatrix<Scalar> hv = h * r.eigenvectors;
    for (Eigen::Index k = 0; k < n; ++k)
      r.residuals(k) = (hv.col(k) - r.eigenvalues(k) * r.eigenvectors.col(k)).norm();
    const Scalar bound = static_cast<Scalar>(opt.residual_tol) * matrix_scale(h);
    if (n > 0 && r.residuals.maxCoeff() > bound)
      throw NumericalError("eig_dense: residual " + std::to_string(double(r.residuals.maxCoeff())) +
                           " exceeds bound " + std::to_string(double(bound)));
  }
  return r;
}

}  // namespace tripod

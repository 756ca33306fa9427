#include "tripod/eigen_engine.hpp"

#include <sstream>

extern "C" {
void zgeev_(const char* jobvl, const char* jobvr, const int* n, std::complex<double>* a,
            const int* lda, std::complex<double>* w, std::complex<double>* vl, const int* ldvl,
            std::complex<double>* vr, const int* ldvr, std::complex<double>* work,
            const int* lwork, double* rwork, int* info);
}

namespace tripod::detail {

void zgeev(const CMatrix<double>& a, bool vectors, CVector<double>& w, CMatrix<double>& vr) {
  const int n = static_cast<int>(a.rows());
  CMatrix<double> work_a = a;  // destroyed by LAPACK
  w.resize(n);
  vr.resize(vectors ? n : 1, vectors ? n : 1);
  std::complex<double> vl_dummy;
  std::vector<double> rwork(2 * static_cast<std::size_t>(n));
  const char jobvl = 'N';
  const char jobvr = vectors ? 'V' : 'N';
  const int one = 1;
  const int ldvr = vectors ? n : 1;
  int info = 0;

  int lwork = -1;
  std::complex<double> query;
  zgeev_(&jobvl, &jobvr, &n, work_a.data(), &n, w.data(), &vl_dummy, &one, vr.data(), &ldvr,
         &query, &lwork, rwork.data(), &info);
  lwork = std::max(static_cast<int>(query.real()), 2 * n);
  std::vector<std::complex<double>> work(static_cast<std::size_t>(lwork));
  zgeev_(&jobvl, &jobvr, &n, work_a.data(), &n, w.data(), &vl_dummy, &one, vr.data(), &ldvr,
         work.data(), &lwork, rwork.data(), &info);
  if (info < 0) throw NumericalError("zgeev: illegal argument " + std::to_string(-info));
  if (info > 0) throw_nonconvergence(a, info);
  if (!vectors) vr.resize(0, 0);
}

void throw_nonconvergence(const CMatrix<double>& h, int info) {
  std::ostringstream msg;
  msg << "eigensolver did not converge (info=" << info << ", dim=" << h.rows()
      << ", norm=" << matrix_scale(h);
  Eigen::JacobiSVD<CMatrix<double>> svd(h);
  const auto& s = svd.singularValues();
  if (s.size() > 0) {
    const double smin = s(s.size() - 1);
    msg << ", cond=" << (smin > 0 ? s(0) / smin : std::numeric_limits<double>::infinity());
  }
  msg << ")";
  throw NumericalError(msg.str());
}

}  // namespace tripod::detail

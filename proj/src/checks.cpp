#include "hoq/checks.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace hoq {

double min_hermitian_eig(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("min_hermitian_eig: non-square");
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd h(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      const cx v = 0.5 * (m(r, c) + std::conj(m(c, r)));
      h(r, c) = v;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool hermitian_check(const ComplexMatrix& m, double tol) {
  if (!m.square()) throw std::invalid_argument("hermitian_check: non-square");
  return m.frob_dist(m.dagger()) <= tol;
}

bool psd_check(const ComplexMatrix& m, double tol) {
  if (!m.square()) throw std::invalid_argument("psd_check: non-square");
  if (!hermitian_check(m, tol)) return false;
  return min_hermitian_eig(m) >= -tol;
}

}  // namespace hoq

#include "cmap/linalg.hpp"

#include <Eigen/Eigenvalues>

#include "cmap/errors.hpp"

namespace cmap {

Eigen::VectorXd RealSymMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Eigen::VectorXd HermitianMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

RealSymMatrix hermitian_to_real(const HermitianMatrix& H, double tol) {
  const int m = H.dim();
  double scale = m > 0 ? H.m.cwiseAbs().maxCoeff() : 0.0;
  if (H.hermiticity_residual() > tol * (scale + 1.0))
    throw ConsistencyError("hermiticity violation in hermitian_to_real");

  // 2 H_ab dz^a dz̄^b with dz = dx + i dy expands into the real quadratic
  // form below; hermiticity makes the symmetrized result real.
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      Complex h = H.m(a, b);
      C(2 * a, 2 * b) += h;
      C(2 * a, 2 * b + 1) += Complex(0, -1) * h;
      C(2 * a + 1, 2 * b) += Complex(0, 1) * h;
      C(2 * a + 1, 2 * b + 1) += h;
    }
  }
  Eigen::MatrixXcd S = C + C.transpose();
  return RealSymMatrix(S.real());
}

}  // namespace cmap

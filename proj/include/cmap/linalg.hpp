#pragma once

#include <Eigen/Core>

#include "cmap/dual.hpp"

namespace cmap {

/// Real symmetric bilinear form (metric component matrix).
struct RealSymMatrix {
  Eigen::MatrixXd m;

  RealSymMatrix() = default;
  explicit RealSymMatrix(Eigen::MatrixXd mat) : m(std::move(mat)) {}

  int dim() const { return static_cast<int>(m.rows()); }
  double asymmetry() const { return (m - m.transpose()).cwiseAbs().maxCoeff(); }
  /// Eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const;
};

struct HermitianMatrix {
  Eigen::MatrixXcd m;

  HermitianMatrix() = default;
  explicit HermitianMatrix(Eigen::MatrixXcd mat) : m(std::move(mat)) {}

  int dim() const { return static_cast<int>(m.rows()); }
  double hermiticity_residual() const {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
  }
  /// Real eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const;
};

/// Realifies the line element 2 H_{ab̄} dz^a dz̄^b over the coordinates
/// (Re z^1, Im z^1, Re z^2, ...): each complex dimension doubles, the (Re, Im)
/// pair of a coordinate staying contiguous in declaration order.  Throws
/// ConsistencyError when H is not hermitian within `tol` (scaled).
RealSymMatrix hermitian_to_real(const HermitianMatrix& H, double tol = 1e-12);

}  // namespace cmap

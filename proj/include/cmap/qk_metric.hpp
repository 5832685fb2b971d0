#pragma once

#include "cmap/special_kahler.hpp"

namespace cmap {

/// Point on the 4(n+1)-dimensional quaternion-Kähler manifold: dilaton φ,
/// axion σ, fiber vectors A^I, B_I and a projective base point.
///
/// Metric component matrices use the frozen real basis
///   (dφ, dσ, dA^1..dA^{n+1}, dB_1..dB_{n+1}, Re dZ^2, Im dZ^2, ...).
struct FSPoint {
  double phi = 0.0;
  double sigma = 0.0;
  Eigen::VectorXd A;
  Eigen::VectorXd B;
  ProjectivePoint Z;

  int n() const { return Z.n(); }
  int dim() const { return 4 * (n() + 1); }
};

/// Parameters of the solvable group acting on the fibers: dilation β, axion
/// shift α and the Heisenberg shifts ε^I, ε_I.
struct GActionParams {
  double beta = 0.0;
  double alpha = 0.0;
  Eigen::VectorXd eps_upper;  // shifts A^I
  Eigen::VectorXd eps_lower;  // shifts B_I

  static GActionParams identity(int m) {
    GActionParams g;
    g.eps_upper = Eigen::VectorXd::Zero(m);
    g.eps_lower = Eigen::VectorXd::Zero(m);
    return g;
  }
};

/// The quaternion-Kähler metric at pt, assembled from
///   dφ² - e^{-φ}(𝒩+𝒩̄)_IJ W^I W̄^J
///      + e^{-2φ}(dσ - ½(A^I dB_I - B_I dA^I))² - 4𝒦_{AB̄} dZ^A dZ̄^B,
/// W^I = (𝒩+𝒩̄)^{-1 IJ}(2𝒩̄_JK dA^K - i dB_J).  Exactly symmetric; the
/// imaginary remainder of the hermitian pieces is asserted ≤ 1e-12 (scaled).
RealSymMatrix fs_metric(const Prepotential& P, const FSPoint& pt);

/// A → e^β(A+ε), B → e^β(B+ε), φ → φ+2β,
/// σ → e^{2β}(σ + α - ½ε_I A^I + ½ε^I B_I); Z unchanged.  The 2β dilaton
/// weight is the one that makes this an isometry of fs_metric.
FSPoint g_action(const FSPoint& pt, const GActionParams& g);

/// Group element equal to "apply g1, then g2".
GActionParams compose(const GActionParams& g1, const GActionParams& g2);

/// Jacobian of g_action in the frozen basis (constant in pt).
Eigen::MatrixXd action_jacobian(const GActionParams& g, int n);

/// ‖Jᵀ·fs_metric(g·pt)·J - fs_metric(pt)‖∞; zero iff g acts isometrically.
double isometry_residual(const Prepotential& P, const FSPoint& pt,
                         const GActionParams& g);

/// Eigenvalues of fs_metric at pt, ascending.
Eigen::VectorXd signature_check(const Prepotential& P, const FSPoint& pt);

}  // namespace cmap

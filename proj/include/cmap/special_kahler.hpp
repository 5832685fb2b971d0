#pragma once

#include <span>
#include <vector>

#include "cmap/linalg.hpp"
#include "cmap/prepotential.hpp"

namespace cmap {

/// Rigid special-geometry data at a point X: the Kähler potential
/// K = i(X̄^I F_I - X^I F̄_I), the metric N_IJ = i(F_IJ - F̄_IJ) and the
/// matrix 𝒩_IJ = -i F̄_IJ - (NX)_I (NX)_J / (XNX).
struct SKData {
  double K;
  RealSymMatrix N;
  Eigen::MatrixXcd curlyN;
};

/// Projective point: Z^1 = 1 held exactly, free coordinates Z^A, A = 2..n+1.
struct ProjectivePoint {
  Eigen::VectorXcd Z;  // the n free coordinates

  int n() const { return static_cast<int>(Z.size()); }
  /// Full vector (1, Z^2, ..., Z^{n+1}).
  Eigen::VectorXcd embed() const {
    Eigen::VectorXcd X(Z.size() + 1);
    X(0) = 1.0;
    X.tail(Z.size()) = Z;
    return X;
  }
};

struct DomainReport {
  bool positivity = false;           // Z N Z̄ > 0
  bool kahler_block_negdef = false;  // eigenvalues of 𝒦_{AB̄} < 0
  bool curlyN_sum_negdef = false;    // eigenvalues of 𝒩 + 𝒩̄ < 0
  double zNz = 0.0;

  bool all() const {
    return positivity && kahler_block_negdef && curlyN_sum_negdef;
  }
  /// Name of the first failing verdict, empty when all pass.
  std::string first_failure() const {
    if (!positivity) return "positivity";
    if (!kahler_block_negdef) return "kahler_block_negdef";
    if (!curlyN_sum_negdef) return "curlyN_sum_negdef";
    return {};
  }
};

SKData sk_data(const Prepotential& P, std::span<const Complex> X);

/// Projective Kähler potential 𝒦 = ln(Z N Z̄) and its n×n mixed Hessian
/// 𝒦_{AB̄}, the latter by dual-number differentiation through the full
/// composition (N depends on Z through F_IJ).
std::pair<double, HermitianMatrix> projective_potential(
    const Prepotential& P, const ProjectivePoint& Z);

/// Three independent positivity verdicts at Z; never throws, failures are
/// encoded in the report.  Eigenvalue signs use a margin of 1e-10·‖matrix‖.
DomainReport domain_check(const Prepotential& P, const ProjectivePoint& Z);

namespace detail {

// i (vb·F_I(vh) - vh·F̄_I(vb)); real when vb = conj(vh).
template <class S>
S rigid_kahler(const Prepotential& P, std::span<const S> vh,
               std::span<const S> vb) {
  auto FI = prepotential_gradient(P, vh);
  auto FbI = conj_gradient(P, vb);
  S acc{};
  for (size_t i = 0; i < vh.size(); ++i)
    acc += vb[i] * FI[i] - vh[i] * FbI[i];
  return Complex(0, 1) * acc;
}

// N_IJ = i (F_IJ(vh) - F̄_IJ(vb)); real symmetric when vb = conj(vh).
template <class S>
Mat<S> matrix_n(const Prepotential& P, std::span<const S> vh,
                std::span<const S> vb) {
  const int m = static_cast<int>(vh.size());
  Mat<S> F = hessian_of_eval(P, vh);
  Mat<S> Fb = conj_hessian(P, vb);
  Mat<S> N(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      N(i, j) = Complex(0, 1) * (F(i, j) - Fb(i, j));
  return N;
}

// 𝒦 = ln(Zh N Zb) on full (embedded) coordinate vectors.
template <class S>
S projective_kahler(const Prepotential& P, std::span<const S> Zh,
                    std::span<const S> Zb) {
  Mat<S> N = matrix_n(P, Zh, Zb);
  return log(quadratic_form(N, Zh, Zb));
}

}  // namespace detail
}  // namespace cmap

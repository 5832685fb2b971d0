#include "cmap/qk_metric.hpp"

#include <Eigen/LU>
#include <cmath>

namespace cmap {
namespace {

constexpr double kImagTol = 1e-12;

}  // namespace

RealSymMatrix fs_metric(const Prepotential& P, const FSPoint& pt) {
  const int n = pt.n();
  const int m = n + 1;
  const int dim = pt.dim();

  DomainReport rep = domain_check(P, pt.Z);
  if (!rep.all()) throw OutsideDomain(rep.first_failure());

  Eigen::VectorXcd X = pt.Z.embed();
  SKData sk = sk_data(P, std::span<const Complex>(X.data(), X.size()));

  Eigen::MatrixXcd sumc = sk.curlyN + sk.curlyN.conjugate();
  Eigen::MatrixXd M = sumc.real();  // 𝒩 + 𝒩̄, real symmetric
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible())
    throw DegeneratePoint("fs_metric: 𝒩 + 𝒩̄ is singular");
  Eigen::MatrixXd Minv = lu.inverse();

  const int iphi = 0, isig = 1;
  auto iA = [&](int I) { return 2 + I; };
  auto iB = [&](int I) { return 2 + m + I; };
  auto iRe = [&](int a) { return 2 + 2 * m + 2 * a; };

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
  g(iphi, iphi) = 1.0;

  // e^{-2φ} (dσ - ½(A dB - B dA))²
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim);
  theta(isig) = 1.0;
  for (int I = 0; I < m; ++I) {
    theta(iB(I)) = -0.5 * pt.A(I);
    theta(iA(I)) = 0.5 * pt.B(I);
  }
  g += std::exp(-2.0 * pt.phi) * (theta * theta.transpose());

  // -e^{-φ} (𝒩+𝒩̄)_IJ W^I W̄^J over the real one-forms (dA, dB).
  // W = S u with u = (dA, dB):  S = [Minv·2𝒩̄ | -i·Minv].
  Eigen::MatrixXcd S(m, 2 * m);
  S.leftCols(m) = Minv * (2.0 * sk.curlyN.conjugate());
  S.rightCols(m) = Complex(0, -1) * Minv;
  Eigen::MatrixXcd R =
      -std::exp(-pt.phi) * (S.transpose() * M * S.conjugate());
  Eigen::MatrixXcd Rsym = 0.5 * (R + R.transpose());
  double rscale = Rsym.cwiseAbs().maxCoeff();
  if (Rsym.imag().cwiseAbs().maxCoeff() > kImagTol * (rscale + 1.0))
    throw ConsistencyError("fs_metric: fiber quadratic form not real");
  g.block(2, 2, 2 * m, 2 * m) += Rsym.real();

  // -4 𝒦_{AB̄} dZ^A dZ̄^B, realized with the factor-2 hermitian convention.
  if (n > 0) {
    auto [kappa, kblock] = projective_potential(P, pt.Z);
    (void)kappa;
    RealSymMatrix zblock =
        hermitian_to_real(HermitianMatrix(-2.0 * kblock.m));
    g.block(iRe(0), iRe(0), 2 * n, 2 * n) += zblock.m;
  }

  Eigen::MatrixXd gs = 0.5 * (g + g.transpose());
  return RealSymMatrix(gs);
}

FSPoint g_action(const FSPoint& pt, const GActionParams& g) {
  FSPoint out = pt;
  double eb = std::exp(g.beta);
  // The dilaton moves by 2β: that weight is forced by invariance of the
  // e^{-φ} and e^{-2φ} fiber terms under dA, dB, dσ picking up e^β, e^{2β}.
  out.phi = pt.phi + 2.0 * g.beta;
  out.A = eb * (pt.A + g.eps_upper);
  out.B = eb * (pt.B + g.eps_lower);
  out.sigma = std::exp(2.0 * g.beta) *
              (pt.sigma + g.alpha - 0.5 * g.eps_lower.dot(pt.A) +
               0.5 * g.eps_upper.dot(pt.B));
  return out;
}

GActionParams compose(const GActionParams& g1, const GActionParams& g2) {
  GActionParams g;
  double d1 = std::exp(-g1.beta);
  g.beta = g1.beta + g2.beta;
  g.eps_upper = g1.eps_upper + d1 * g2.eps_upper;
  g.eps_lower = g1.eps_lower + d1 * g2.eps_lower;
  g.alpha = g1.alpha + d1 * d1 * g2.alpha +
            0.5 * d1 *
                (g2.eps_upper.dot(g1.eps_lower) -
                 g2.eps_lower.dot(g1.eps_upper));
  return g;
}

Eigen::MatrixXd action_jacobian(const GActionParams& g, int n) {
  const int m = n + 1;
  const int dim = 4 * m;
  double eb = std::exp(g.beta);
  double e2b = eb * eb;
  Eigen::MatrixXd J = Eigen::MatrixXd::Identity(dim, dim);
  J(1, 1) = e2b;
  for (int I = 0; I < m; ++I) {
    J(2 + I, 2 + I) = eb;
    J(2 + m + I, 2 + m + I) = eb;
    J(1, 2 + I) = -0.5 * e2b * g.eps_lower(I);
    J(1, 2 + m + I) = 0.5 * e2b * g.eps_upper(I);
  }
  return J;
}

double isometry_residual(const Prepotential& P, const FSPoint& pt,
                         const GActionParams& g) {
  FSPoint moved = g_action(pt, g);
  Eigen::MatrixXd J = action_jacobian(g, pt.n());
  Eigen::MatrixXd pulled =
      J.transpose() * fs_metric(P, moved).m * J;
  return (pulled - fs_metric(P, pt).m).cwiseAbs().maxCoeff();
}

Eigen::VectorXd signature_check(const Prepotential& P, const FSPoint& pt) {
  return fs_metric(P, pt).eigenvalues();
}

}  // namespace cmap

#include "cmap/special_kahler.hpp"

#include <cmath>

namespace cmap {
namespace {

constexpr double kRealnessTol = 1e-10;

// Strict negativity with margin 1e-10·‖matrix‖, to avoid boundary flapping
// in sampled sweeps.
bool negative_definite(const Eigen::VectorXd& eigs, double scale) {
  double margin = 1e-10 * scale;
  for (int i = 0; i < eigs.size(); ++i)
    if (!(eigs(i) < -margin)) return false;
  return true;
}

}  // namespace

SKData sk_data(const Prepotential& P, std::span<const Complex> X) {
  const int m = P.size();
  ComplexJet jet = eval_jet(P, X);

  Complex kc = 0.0;
  for (int i = 0; i < m; ++i)
    kc += std::conj(X[i]) * jet.gradient(i) -
          X[i] * std::conj(jet.gradient(i));
  kc *= Complex(0, 1);

  Eigen::MatrixXcd Nc =
      Complex(0, 1) * (jet.hessian - jet.hessian.conjugate());
  double scale = Nc.cwiseAbs().maxCoeff() + std::abs(kc);
  if (std::abs(kc.imag()) > kRealnessTol * (scale + 1.0) ||
      Nc.imag().cwiseAbs().maxCoeff() > kRealnessTol * (scale + 1.0))
    throw ConsistencyError("sk_data: K or N acquired an imaginary part");

  SKData out;
  out.K = kc.real();
  out.N = RealSymMatrix(Nc.real());

  Eigen::Map<const Eigen::VectorXcd> Xv(X.data(), m);
  Eigen::VectorXcd NX = out.N.m * Xv;
  Complex den = Xv.transpose() * NX;
  if (std::abs(den) < 1e-14 * (out.N.m.cwiseAbs().maxCoeff() + 1.0))
    throw DegeneratePoint("sk_data: X N X vanishes");
  out.curlyN = Complex(0, -1) * jet.hessian.conjugate() -
               (NX * NX.transpose()) / den;
  return out;
}

std::pair<double, HermitianMatrix> projective_potential(
    const Prepotential& P, const ProjectivePoint& Z) {
  const int n = Z.n();
  Eigen::VectorXcd X = Z.embed();
  SKData sk = sk_data(P, std::span<const Complex>(X.data(), X.size()));
  double zNz = (X.adjoint() * sk.N.m * X).value().real();
  if (!(zNz > 0.0)) throw OutsideDomain("positivity");

  // Mixed Hessian of 𝒦(Z, Z̄) by seeding Z^A (outer) and Z̄^B (inner).
  Eigen::MatrixXcd block(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::vector<D2> Zh(n + 1), Zb(n + 1);
      for (int k = 0; k <= n; ++k) {
        Zh[k] = D2(D1(X(k)));
        Zb[k] = D2(D1(std::conj(X(k))));
      }
      Zh[a + 1].b = D1(1.0);      // holomorphic direction, outer seed
      Zb[b + 1].a.b = 1.0;        // anti-holomorphic direction, inner seed
      D2 kt = detail::projective_kahler(P, std::span<const D2>(Zh),
                                        std::span<const D2>(Zb));
      block(a, b) = kt.b.b;
    }
  }
  return {std::log(zNz), HermitianMatrix(block)};
}

DomainReport domain_check(const Prepotential& P, const ProjectivePoint& Z) {
  DomainReport rep;
  Eigen::VectorXcd X = Z.embed();
  try {
    SKData sk = sk_data(P, std::span<const Complex>(X.data(), X.size()));
    rep.zNz = (X.adjoint() * sk.N.m * X).value().real();
    rep.positivity = rep.zNz > 0.0;

    Eigen::MatrixXcd sum = sk.curlyN + sk.curlyN.conjugate();
    HermitianMatrix Msum(sum);
    rep.curlyN_sum_negdef =
        negative_definite(Msum.eigenvalues(), sum.cwiseAbs().maxCoeff());

    if (Z.n() > 0) {
      // 𝒦_{AB̄} stays well-defined for Z N Z̄ < 0 (log branch constants do
      // not survive differentiation), so the verdict is computed directly.
      const int n = Z.n();
      Eigen::MatrixXcd block(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          std::vector<D2> Zh(n + 1), Zb(n + 1);
          for (int k = 0; k <= n; ++k) {
            Zh[k] = D2(D1(X(k)));
            Zb[k] = D2(D1(std::conj(X(k))));
          }
          Zh[a + 1].b = D1(1.0);
          Zb[b + 1].a.b = 1.0;
          block(a, b) = detail::projective_kahler(
                            P, std::span<const D2>(Zh), std::span<const D2>(Zb))
                            .b.b;
        }
      HermitianMatrix Kb(block);
      rep.kahler_block_negdef =
          negative_definite(Kb.eigenvalues(), block.cwiseAbs().maxCoeff());
    } else {
      rep.kahler_block_negdef = true;  // empty block
    }
  } catch (const Error&) {
    // Degenerate or singular points simply fail the report.
    rep.positivity = false;
    rep.kahler_block_negdef = false;
    rep.curlyN_sum_negdef = false;
  }
  return rep;
}

}  // namespace cmap

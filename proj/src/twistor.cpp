#include "cmap/twistor.hpp"

#include <Eigen/LU>
#include <cmath>

namespace cmap {
namespace detail {

// K_T at generic scalars.  Holomorphic and anti-holomorphic inputs are
// independent: Zh/Zb are the embedded coordinate vectors, wsum = w + w̄
// (receiving seeds from either side), wsum0 = w_0 + w̄_0.
template <class S>
S twistor_kt(const Prepotential& P, std::span<const S> Zh,
             std::span<const S> Zb, std::span<const S> wsum, const S& wsum0) {
  Mat<S> N = matrix_n(P, Zh, Zb);
  S kap = log(quadratic_form(N, Zh, Zb));
  std::vector<S> rhs(wsum.begin(), wsum.end());
  std::vector<S> x = solve_linear(N, std::move(rhs));
  S Ssc{};
  for (size_t i = 0; i < wsum.size(); ++i) Ssc += wsum[i] * x[i];
  S D = Ssc - wsum0;
  return 0.5 * (kap + log(D)) + 0.5 * std::log(2.0);
}

}  // namespace detail

namespace {

struct TwistorReals {
  Eigen::VectorXcd Zfull;
  Eigen::VectorXd wsum;
  double wsum0;
};

TwistorReals unpack(const TwistorPoint& pt) {
  TwistorReals r;
  r.Zfull = pt.Z.embed();
  r.wsum = 2.0 * pt.w.real();
  r.wsum0 = 2.0 * pt.w0.real();
  return r;
}

// Positivity of the log arguments, with named errors.
void check_cone(const Prepotential& P, const TwistorReals& r) {
  SKData sk = sk_data(
      P, std::span<const Complex>(r.Zfull.data(), r.Zfull.size()));
  double zNz = (r.Zfull.adjoint() * sk.N.m * r.Zfull).value().real();
  if (!(zNz > 0.0)) throw OutsideDomain("positivity");
  Eigen::VectorXd x = sk.N.m.fullPivLu().solve(r.wsum);
  double D = r.wsum.dot(x) - r.wsum0;
  if (!(D > 0.0)) throw OutsideCone("twistor_potential: nonpositive log argument");
}

}  // namespace

double twistor_potential(const Prepotential& P, const TwistorPoint& pt) {
  TwistorReals r = unpack(pt);
  check_cone(P, r);
  const int m = pt.n() + 1;
  std::vector<Complex> Zh(m), Zb(m), ws(m);
  for (int k = 0; k < m; ++k) {
    Zh[k] = r.Zfull(k);
    Zb[k] = std::conj(r.Zfull(k));
  }
  for (int i = 0; i < m; ++i) ws[i] = r.wsum(i);
  Complex kt = detail::twistor_kt(P, std::span<const Complex>(Zh),
                                  std::span<const Complex>(Zb),
                                  std::span<const Complex>(ws),
                                  Complex(r.wsum0));
  if (std::abs(kt.imag()) > 1e-10 * (std::abs(kt) + 1.0))
    throw ConsistencyError("twistor_potential: complex result");
  return kt.real();
}

Eigen::VectorXcd holomorphic_one_form(const TwistorPoint& pt) {
  const int m = pt.n() + 1;
  Eigen::VectorXcd X = Eigen::VectorXcd::Zero(pt.complex_dim());
  Eigen::VectorXcd Z = pt.Z.embed();
  for (int I = 0; I < m; ++I) X(I) = 2.0 * Z(I);
  return X;
}

HermitianMatrix qk_metric_from_twistor(const Prepotential& P,
                                       const TwistorPoint& pt) {
  TwistorReals r = unpack(pt);
  check_cone(P, r);
  const int n = pt.n();
  const int m = n + 1;
  const int dim = pt.complex_dim();  // m (w_I) + 1 (w_0) + n (Z^A)

  double kt = twistor_potential(P, pt);
  double damp = std::exp(-2.0 * kt);
  Eigen::VectorXcd X = holomorphic_one_form(pt);

  // Mixed Hessian K_{T,αβ̄}: outer seed on the holomorphic slot α, inner
  // seed on the anti-holomorphic slot β.  w-slots seed wsum directly.
  Eigen::MatrixXcd hess(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      std::vector<D2> Zh(m), Zb(m), ws(m);
      for (int k = 0; k < m; ++k) {
        Zh[k] = D2(D1(r.Zfull(k)));
        Zb[k] = D2(D1(std::conj(r.Zfull(k))));
        ws[k] = D2(D1(Complex(r.wsum(k))));
      }
      D2 ws0(D1(Complex(r.wsum0)));
      // outer seed (holomorphic direction a)
      if (a < m)
        ws[a].b = D1(1.0);
      else if (a == m)
        ws0.b = D1(1.0);
      else
        Zh[a - m].b = D1(1.0);
      // inner seed (anti-holomorphic direction b)
      if (b < m)
        ws[b].a.b = 1.0;
      else if (b == m)
        ws0.a.b = 1.0;
      else
        Zb[b - m].a.b = 1.0;
      D2 out = detail::twistor_kt(P, std::span<const D2>(Zh),
                                  std::span<const D2>(Zb),
                                  std::span<const D2>(ws), ws0);
      hess(a, b) = out.b.b;
    }
  }
  Eigen::MatrixXcd G = hess - damp * (X * X.adjoint());
  return HermitianMatrix(G);
}

TwistorPoint coords_fs_to_twistor(const Prepotential& P, const FSPoint& pt) {
  const int m = pt.n() + 1;
  Eigen::VectorXcd Z = pt.Z.embed();
  ComplexJet jet = eval_jet(P, std::span<const Complex>(Z.data(), Z.size()));
  const Complex i1(0, 1);

  TwistorPoint out;
  out.Z = pt.Z;
  out.w.resize(m);
  Eigen::VectorXcd A = pt.A.cast<Complex>();
  Eigen::VectorXcd FA = jet.hessian * A;
  for (int I = 0; I < m; ++I)
    out.w(I) = i1 * FA(I) - 0.5 * i1 * pt.B(I);
  Complex AFA = (A.transpose() * jet.hessian * A).value();
  out.w0 = i1 * AFA - i1 * (pt.sigma + 0.5 * pt.A.dot(pt.B)) -
           std::exp(pt.phi);
  return out;
}

Eigen::MatrixXcd fs_to_twistor_jacobian(const Prepotential& P,
                                        const FSPoint& pt) {
  const int n = pt.n();
  const int m = n + 1;
  const int zdim = 2 * m;
  const int xdim = pt.dim();
  Eigen::VectorXcd Z = pt.Z.embed();
  ComplexJet jet = eval_jet(P, std::span<const Complex>(Z.data(), Z.size()));
  std::vector<Eigen::MatrixXcd> F3 =
      third_derivatives(P, std::span<const Complex>(Z.data(), Z.size()));
  const Complex i1(0, 1);
  Eigen::VectorXcd A = pt.A.cast<Complex>();

  auto colA = [&](int I) { return 2 + I; };
  auto colB = [&](int I) { return 2 + m + I; };
  auto colRe = [&](int a) { return 2 + 2 * m + 2 * a; };
  auto colIm = [&](int a) { return 2 + 2 * m + 2 * a + 1; };

  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(zdim, xdim);
  // rows 0..m-1: w_I = i F_IJ(Z) A^J - (i/2) B_I
  for (int I = 0; I < m; ++I) {
    for (int K = 0; K < m; ++K) J(I, colA(K)) = i1 * jet.hessian(I, K);
    J(I, colB(I)) = -0.5 * i1;
    for (int a = 0; a < n; ++a) {
      Complex T = (F3[a + 1].row(I) * A).value();  // Σ_J F_IJ,A A^J
      J(I, colRe(a)) = i1 * T;
      J(I, colIm(a)) = i1 * (i1 * T);
    }
  }
  // row m: w_0 = i A F A - i(σ + ½A·B) - e^φ
  J(m, 0) = -std::exp(pt.phi);
  J(m, 1) = -i1;
  Eigen::VectorXcd FA = jet.hessian * A;
  for (int K = 0; K < m; ++K) {
    J(m, colA(K)) = 2.0 * i1 * FA(K) - 0.5 * i1 * pt.B(K);
    J(m, colB(K)) = -0.5 * i1 * pt.A(K);
  }
  for (int a = 0; a < n; ++a) {
    Complex U = (A.transpose() * F3[a + 1] * A).value();
    J(m, colRe(a)) = i1 * U;
    J(m, colIm(a)) = i1 * (i1 * U);
  }
  // rows m+1..: Z^A rows
  for (int a = 0; a < n; ++a) {
    J(m + 1 + a, colRe(a)) = 1.0;
    J(m + 1 + a, colIm(a)) = i1;
  }
  return J;
}

MetricComparison compare_metrics(const Prepotential& P, const FSPoint& pt) {
  MetricComparison cmp;
  cmp.fs = fs_metric(P, pt);

  TwistorPoint tw = coords_fs_to_twistor(P, pt);
  HermitianMatrix G = qk_metric_from_twistor(P, tw);
  Eigen::MatrixXcd J = fs_to_twistor_jacobian(P, pt);

  // Same factor-2 realization as hermitian_to_real, pulled back through J.
  Eigen::MatrixXcd C = 2.0 * (J.transpose() * G.m * J.conjugate());
  Eigen::MatrixXcd S = 0.5 * (C + C.transpose());
  double scale = S.cwiseAbs().maxCoeff();
  if (S.imag().cwiseAbs().maxCoeff() > 1e-10 * (scale + 1.0))
    throw ConsistencyError("compare_metrics: pullback not real");
  cmp.twistor_pullback = RealSymMatrix(S.real());

  double num = (cmp.twistor_pullback.m.cwiseProduct(cmp.fs.m)).sum();
  double den = (cmp.twistor_pullback.m.cwiseProduct(cmp.twistor_pullback.m)).sum();
  cmp.constant = num / den;
  cmp.max_rel_dev =
      (cmp.constant * cmp.twistor_pullback.m - cmp.fs.m).cwiseAbs().maxCoeff() /
      cmp.fs.m.cwiseAbs().maxCoeff();
  return cmp;
}

}  // namespace cmap

#include <doctest.h>

#include <cmath>

#include "cmap/sampling.hpp"
#include "cmap/twistor.hpp"

using namespace cmap;

namespace {

TwistorPoint tw_n0(double wsum0, double wsum1) {
  TwistorPoint pt;
  pt.Z.Z = Eigen::VectorXcd::Zero(0);
  pt.w0 = 0.5 * wsum0;
  pt.w = Eigen::VectorXcd::Zero(1);
  pt.w(0) = 0.5 * wsum1;
  return pt;
}

TwistorPoint from_hkc(const HKCPoint& hk, int n) {
  // v must sit on the v^1 = 1 slice for this conversion.
  TwistorPoint pt;
  pt.Z.Z = hk.v.tail(n);
  pt.w0 = hk.w0;
  pt.w = hk.w;
  return pt;
}

}  // namespace

TEST_CASE("twistor potential worked value and cone error") {
  QuadraticModel P(0);
  CHECK(twistor_potential(P, tw_n0(-2.0, 0.0)) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(twistor_potential(P, tw_n0(5.0, 0.0)), OutsideCone);
}

TEST_CASE("exp(K_T) equals the hyperkähler potential on the v^1=1 slice") {
  Xoshiro256 rng(41);
  QuadraticModel q1(1);
  CubicModel stu = CubicModel::stu();
  const Prepotential* models[] = {&q1, &stu};
  for (const Prepotential* P : models) {
    SampleBox box = default_box(*P);
    for (int k = 0; k < 50; ++k) {
      HKCPoint hk = sample_hkc(*P, box, rng);
      hk.v /= hk.v(0);  // to the slice
      double chi = hk_potential(*P, hk);
      TwistorPoint pt = from_hkc(hk, P->n());
      CHECK(std::abs(std::exp(twistor_potential(*P, pt)) - chi) / chi <
            1e-12);
    }
  }
}

TEST_CASE("twistor potential ignores imaginary shifts of w") {
  QuadraticModel P(0);
  TwistorPoint a = tw_n0(-2.0, 0.4);
  TwistorPoint b = a;
  b.w0 += Complex(0, 1.7);
  b.w(0) += Complex(0, -0.9);
  CHECK(twistor_potential(P, a) == twistor_potential(P, b));
}

TEST_CASE("holomorphic one-form components") {
  QuadraticModel P0(0);
  TwistorPoint pt = tw_n0(-2.0, 0.0);
  Eigen::VectorXcd X = holomorphic_one_form(pt);
  REQUIRE(X.size() == 2);
  CHECK(std::abs(X(0) - Complex(2.0)) < 1e-15);
  CHECK(std::abs(X(1)) < 1e-15);

  TwistorPoint stu_pt;
  stu_pt.Z.Z = Eigen::VectorXcd(3);
  stu_pt.Z.Z << Complex(0.1, 1.0), Complex(-0.2, 0.8), Complex(0.0, -0.9);
  stu_pt.w0 = -1.0;
  stu_pt.w = Eigen::VectorXcd::Zero(4);
  Eigen::VectorXcd Xs = holomorphic_one_form(stu_pt);
  REQUIRE(Xs.size() == 8);
  CHECK(std::abs(Xs(0) - Complex(2.0)) < 1e-15);
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(Xs(1 + a) - 2.0 * stu_pt.Z.Z(a)) < 1e-15);
    CHECK(std::abs(Xs(5 + a)) < 1e-15);  // no dZ components
  }
  CHECK(std::abs(Xs(4)) < 1e-15);  // no dw_0 component
}

TEST_CASE("twistor metric is hermitian with the right dimension") {
  Xoshiro256 rng(42);
  QuadraticModel P(1);
  SampleBox box = default_box(P);
  HKCPoint hk = sample_hkc(P, box, rng);
  hk.v /= hk.v(0);
  TwistorPoint pt = from_hkc(hk, 1);
  HermitianMatrix G = qk_metric_from_twistor(P, pt);
  CHECK(G.dim() == 4);  // 2(n+1)
  CHECK(G.hermiticity_residual() < 1e-12);
}

TEST_CASE("coordinate map worked values") {
  QuadraticModel P(0);
  FSPoint pt;
  pt.A = Eigen::VectorXd::Zero(1);
  pt.B = Eigen::VectorXd::Zero(1);
  pt.Z.Z = Eigen::VectorXcd::Zero(0);
  TwistorPoint tw = coords_fs_to_twistor(P, pt);
  CHECK(std::abs(tw.w0 - Complex(-1.0)) < 1e-15);
  CHECK(std::abs(tw.w(0)) < 1e-15);
}

TEST_CASE("coordinate map recovers the dilaton relations") {
  Xoshiro256 rng(43);
  QuadraticModel q1(1);
  CubicModel stu = CubicModel::stu();
  const Prepotential* models[] = {&q1, &stu};
  for (const Prepotential* P : models) {
    SampleBox box = default_box(*P);
    for (int k = 0; k < 20; ++k) {
      FSPoint pt = sample_fs(*P, box, rng);
      TwistorPoint tw = coords_fs_to_twistor(*P, pt);

      Eigen::VectorXcd v = tw.Z.embed();
      Eigen::VectorXd wsumI = 2.0 * tw.w.real();
      double wsum0 = 2.0 * tw.w0.real();
      Eigen::VectorXd G = legendre_solve(
          *P, std::span<const Complex>(v.data(), v.size()), wsum0, wsumI);

      // 2A^I = G^I/G^0 and 4e^φ = K/(G^0)²
      Eigen::VectorXd A_rec = G.tail(P->size()) / (2.0 * G(0));
      CHECK((A_rec - pt.A).lpNorm<Eigen::Infinity>() < 1e-10);
      SKData sk = sk_data(*P, std::span<const Complex>(v.data(), v.size()));
      double ephi_rec = sk.K / (4.0 * G(0) * G(0));
      CHECK(std::abs(ephi_rec - std::exp(pt.phi)) < 1e-10);
    }
  }
}

TEST_CASE("two metric routes agree up to one global constant") {
  QuadraticModel P(0);
  FSPoint pt;
  pt.A = Eigen::VectorXd::Zero(1);
  pt.B = Eigen::VectorXd::Zero(1);
  pt.Z.Z = Eigen::VectorXcd::Zero(0);
  MetricComparison cmp = compare_metrics(P, pt);
  CHECK(cmp.max_rel_dev < 1e-6);
  CHECK(cmp.constant == doctest::Approx(-4.0).epsilon(1e-9));
}

TEST_CASE("comparison constant is point- and model-independent") {
  Xoshiro256 rng(44);
  QuadraticModel q0(0), q1(1);
  CubicModel stu = CubicModel::stu();
  const Prepotential* models[] = {&q0, &q1, &stu};
  double cmin = 1e300, cmax = -1e300;
  for (const Prepotential* P : models) {
    SampleBox box = default_box(*P);
    for (int k = 0; k < 20; ++k) {
      FSPoint pt = sample_fs(*P, box, rng);
      MetricComparison cmp = compare_metrics(*P, pt);
      CHECK(cmp.max_rel_dev < 1e-6);
      cmin = std::min(cmin, cmp.constant);
      cmax = std::max(cmax, cmp.constant);
    }
  }
  CHECK((cmax - cmin) / std::abs(0.5 * (cmax + cmin)) < 1e-8);
}

TEST_CASE("the additive constant in K_T is load-bearing") {
  // Rebuilding the twistor metric as if K_T lacked its ln√2 term (which
  // doubles e^{-2K_T}) must break the two-route agreement.
  Xoshiro256 rng(45);
  QuadraticModel P(1);
  SampleBox box = default_box(P);
  FSPoint pt = sample_fs(P, box, rng);

  TwistorPoint tw = coords_fs_to_twistor(P, pt);
  HermitianMatrix G = qk_metric_from_twistor(P, tw);
  double kt = twistor_potential(P, tw);
  Eigen::VectorXcd X = holomorphic_one_form(tw);
  Eigen::MatrixXcd Gbad = G.m - std::exp(-2.0 * kt) * (X * X.adjoint());

  Eigen::MatrixXcd J = fs_to_twistor_jacobian(P, pt);
  Eigen::MatrixXcd C = 2.0 * (J.transpose() * Gbad * J.conjugate());
  Eigen::MatrixXd Mt = (0.5 * (C + C.transpose())).real();
  Eigen::MatrixXd Mfs = fs_metric(P, pt).m;
  double num = (Mt.cwiseProduct(Mfs)).sum();
  double den = (Mt.cwiseProduct(Mt)).sum();
  double dev = (num / den * Mt - Mfs).cwiseAbs().maxCoeff() /
               Mfs.cwiseAbs().maxCoeff();
  CHECK(dev > 1e-3);
}

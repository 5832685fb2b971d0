#include "cmap/sampling.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>

namespace cmap {

SampleBox default_box(const Prepotential& P) {
  const int n = P.n();
  SampleBox box;
  box.re_lo.resize(n);
  box.re_hi.resize(n);
  box.im_lo.resize(n);
  box.im_hi.resize(n);
  if (dynamic_cast<const CubicModel*>(&P) != nullptr) {
    for (int a = 0; a < n; ++a) {
      box.re_lo(a) = -0.5;
      box.re_hi(a) = 0.5;
      box.im_lo(a) = 0.5;
      box.im_hi(a) = 2.0;
    }
    box.im_lo(n - 1) = -2.0;
    box.im_hi(n - 1) = -0.5;
  } else {
    for (int a = 0; a < n; ++a) {
      box.re_lo(a) = -0.7;
      box.re_hi(a) = 0.7;
      box.im_lo(a) = -0.7;
      box.im_hi(a) = 0.7;
    }
  }
  return box;
}

ProjectivePoint sample_projective(const Prepotential& P, const SampleBox& box,
                                  Xoshiro256& rng, int max_tries) {
  const int n = P.n();
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    ProjectivePoint Z;
    Z.Z.resize(n);
    for (int a = 0; a < n; ++a)
      Z.Z(a) = Complex(rng.uniform(box.re_lo(a), box.re_hi(a)),
                       rng.uniform(box.im_lo(a), box.im_hi(a)));
    if (domain_check(P, Z).all()) return Z;
  }
  throw NumericalError("sample_projective: no domain point found in box");
}

FSPoint sample_fs(const Prepotential& P, const SampleBox& box,
                  Xoshiro256& rng) {
  const int m = P.size();
  FSPoint pt;
  pt.Z = sample_projective(P, box, rng);
  pt.phi = rng.uniform(-0.5, 0.5);
  pt.sigma = rng.uniform(-1.0, 1.0);
  pt.A.resize(m);
  pt.B.resize(m);
  for (int i = 0; i < m; ++i) {
    pt.A(i) = rng.uniform(-1.0, 1.0);
    pt.B(i) = rng.uniform(-1.0, 1.0);
  }
  return pt;
}

HKCPoint sample_hkc(const Prepotential& P, const SampleBox& box,
                    Xoshiro256& rng) {
  const int m = P.size();
  ProjectivePoint Z = sample_projective(P, box, rng);
  double s = rng.uniform(0.5, 2.0);
  double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  Complex phase = s * Complex(std::cos(theta), std::sin(theta));

  HKCPoint pt;
  pt.v = phase * Z.embed();

  Eigen::VectorXd wsumI(m);
  for (int i = 0; i < m; ++i) wsumI(i) = rng.uniform(-1.0, 1.0);

  std::vector<Complex> v(pt.v.data(), pt.v.data() + m), vb(m);
  for (int i = 0; i < m; ++i) vb[i] = std::conj(v[i]);
  Mat<Complex> N = detail::matrix_n(P, std::span<const Complex>(v),
                                    std::span<const Complex>(vb));
  Eigen::MatrixXd Nr(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) Nr(i, j) = N(i, j).real();
  double S = wsumI.dot(Nr.fullPivLu().solve(wsumI));
  double radicand = rng.uniform(0.25, 4.0);
  double wsum0 = S - radicand;

  pt.w.resize(m);
  for (int i = 0; i < m; ++i)
    pt.w(i) = Complex(0.5 * wsumI(i), rng.uniform(-1.0, 1.0));
  pt.w0 = Complex(0.5 * wsum0, rng.uniform(-1.0, 1.0));
  return pt;
}

std::pair<Eigen::VectorXcd, Eigen::VectorXd> sample_section(
    const Prepotential& P, const SampleBox& box, Xoshiro256& rng) {
  const int m = P.size();
  ProjectivePoint Z = sample_projective(P, box, rng);
  double s = rng.uniform(0.5, 2.0);
  double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  Complex phase = s * Complex(std::cos(theta), std::sin(theta));

  Eigen::VectorXcd v = phase * Z.embed();
  Eigen::VectorXd G(m + 1);
  G(0) = rng.uniform(0.5, 2.0);
  for (int i = 1; i <= m; ++i) G(i) = rng.uniform(-1.0, 1.0);
  return {v, G};
}

GActionParams sample_group_element(Xoshiro256& rng, int m, double scale) {
  GActionParams g;
  g.beta = rng.uniform(-scale, scale);
  g.alpha = rng.uniform(-scale, scale);
  g.eps_upper.resize(m);
  g.eps_lower.resize(m);
  for (int i = 0; i < m; ++i) {
    g.eps_upper(i) = rng.uniform(-scale, scale);
    g.eps_lower(i) = rng.uniform(-scale, scale);
  }
  return g;
}

}  // namespace cmap

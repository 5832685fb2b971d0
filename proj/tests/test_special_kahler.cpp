#include <doctest.h>

#include <cmath>

#include "cmap/sampling.hpp"
#include "cmap/special_kahler.hpp"

using namespace cmap;

namespace {

std::span<const Complex> sp(const Eigen::VectorXcd& v) {
  return {v.data(), static_cast<size_t>(v.size())};
}

ProjectivePoint proj(std::initializer_list<Complex> za) {
  ProjectivePoint Z;
  Z.Z.resize(static_cast<int>(za.size()));
  int i = 0;
  for (Complex z : za) Z.Z(i++) = z;
  return Z;
}

}  // namespace

TEST_CASE("sk_data for the quadratic n=0 model") {
  QuadraticModel P(0);
  Eigen::VectorXcd X(1);
  X << 1.0;
  SKData sk = sk_data(P, sp(X));
  CHECK(sk.K == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(sk.N.m(0, 0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(std::abs(sk.curlyN(0, 0) - Complex(-2.0)) < 1e-13);

  X << 2.0;
  CHECK(sk_data(P, sp(X)).K == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("sk_data for the quadratic n=1 model at (1, 0)") {
  QuadraticModel P(1);
  Eigen::VectorXcd X(2);
  X << 1.0, 0.0;
  SKData sk = sk_data(P, sp(X));
  CHECK(sk.N.m(0, 0) == doctest::Approx(4.0));
  CHECK(sk.N.m(1, 1) == doctest::Approx(-4.0));
  CHECK(std::abs(sk.N.m(0, 1)) < 1e-14);
  CHECK(std::abs(sk.curlyN(0, 0) - Complex(-2.0)) < 1e-13);
  CHECK(std::abs(sk.curlyN(1, 1) - Complex(-2.0)) < 1e-13);
}

TEST_CASE("sk_data degenerate denominator") {
  QuadraticModel P(1);
  Eigen::VectorXcd X(2);
  X << 1.0, 1.0;  // X N X = 4 - 4 = 0
  CHECK_THROWS_AS(sk_data(P, sp(X)), DegeneratePoint);
}

TEST_CASE("projective potential values") {
  QuadraticModel P0(0);
  auto [k0, block0] = projective_potential(P0, proj({}));
  CHECK(k0 == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(block0.dim() == 0);

  QuadraticModel P1(1);
  auto [k1, block1] = projective_potential(P1, proj({0.0}));
  CHECK(k1 == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(std::abs(block1.m(0, 0) - Complex(-1.0)) < 1e-13);

  auto [k2, block2] = projective_potential(P1, proj({0.5}));
  CHECK(k2 == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(block2.hermiticity_residual() < 1e-13);
}

TEST_CASE("projective potential outside the domain") {
  QuadraticModel P(1);
  CHECK_THROWS_AS(projective_potential(P, proj({1.5})), OutsideDomain);
}

TEST_CASE("domain_check verdicts") {
  QuadraticModel P1(1);
  DomainReport in = domain_check(P1, proj({0.5}));
  CHECK(in.positivity);
  CHECK(in.kahler_block_negdef);
  CHECK(in.curlyN_sum_negdef);
  CHECK(in.all());

  DomainReport out = domain_check(P1, proj({1.5}));
  CHECK_FALSE(out.positivity);
  CHECK(out.first_failure() == "positivity");

  QuadraticModel P0(0);
  CHECK(domain_check(P0, proj({})).all());
}

TEST_CASE("N stays real symmetric at random points") {
  Xoshiro256 rng(11);
  QuadraticModel q1(1);
  CubicModel stu = CubicModel::stu();
  const Prepotential* models[] = {&q1, &stu};
  for (const Prepotential* P : models) {
    SampleBox box = default_box(*P);
    for (int k = 0; k < 25; ++k) {
      ProjectivePoint Z = sample_projective(*P, box, rng);
      Eigen::VectorXcd X = Z.embed();
      SKData sk = sk_data(*P, sp(X));
      CHECK(sk.N.asymmetry() < 1e-12 * (sk.N.m.cwiseAbs().maxCoeff() + 1));
    }
  }
}

TEST_CASE("exp of the projective potential equals Z N Zbar") {
  Xoshiro256 rng(12);
  CubicModel stu = CubicModel::stu();
  SampleBox box = default_box(stu);
  for (int k = 0; k < 25; ++k) {
    ProjectivePoint Z = sample_projective(stu, box, rng);
    auto [kappa, block] = projective_potential(stu, Z);
    Eigen::VectorXcd X = Z.embed();
    SKData sk = sk_data(stu, sp(X));
    double zNz = (X.adjoint() * sk.N.m * X).value().real();
    CHECK(std::abs(std::exp(kappa) - zNz) / zNz < 1e-12);
  }
}

TEST_CASE("positivity and negative Kähler block imply negative curlyN sum") {
  // Sample raw box points, filter on the first two verdicts, assert the
  // third: the implication the geometry relies on.
  Xoshiro256 rng(13);
  QuadraticModel q1(1);
  CubicModel stu = CubicModel::stu();
  const Prepotential* models[] = {&q1, &stu};
  for (const Prepotential* P : models) {
    SampleBox box = default_box(*P);
    int tested = 0;
    for (int k = 0; k < 400 && tested < 100; ++k) {
      ProjectivePoint Z;
      Z.Z.resize(P->n());
      for (int a = 0; a < P->n(); ++a)
        Z.Z(a) = Complex(rng.uniform(box.re_lo(a), box.re_hi(a)),
                         rng.uniform(box.im_lo(a), box.im_hi(a)));
      DomainReport rep = domain_check(*P, Z);
      if (rep.positivity && rep.kahler_block_negdef) {
        CHECK(rep.curlyN_sum_negdef);
        ++tested;
      }
    }
    CHECK(tested >= 50);
  }
}

#include "cmap/prepotential.hpp"

#include <algorithm>
#include <cmath>

namespace cmap {

QuadraticModel::QuadraticModel(int n, std::vector<double> signs,
                               double add_constant)
    : PrepotentialModel(n + 1), signs_(std::move(signs)),
      add_constant_(add_constant) {
  if (n < 0) throw ConfigError("QuadraticModel: n must be >= 0");
  if (signs_.empty()) {
    signs_.assign(n + 1, -1.0);
    signs_[0] = 1.0;
  }
  if (static_cast<int>(signs_.size()) != n + 1)
    throw ConfigError("QuadraticModel: signs length must be n+1");
  if (signs_[0] != 1.0)
    throw ConfigError("QuadraticModel: leading sign must be +1");
  for (double s : signs_)
    if (s != 1.0 && s != -1.0)
      throw ConfigError("QuadraticModel: signs must be +1 or -1");
}

CubicModel::CubicModel(int n, std::vector<Monomial> monomials,
                       double add_constant)
    : PrepotentialModel(n + 1), monomials_(std::move(monomials)),
      add_constant_(add_constant) {
  if (n < 1) throw ConfigError("CubicModel: needs n >= 1");
  if (monomials_.empty()) throw ConfigError("CubicModel: no monomials");
  for (auto& mono : monomials_) {
    std::sort(mono.abc.begin(), mono.abc.end());
    for (int label : mono.abc)
      if (label < 2 || label > n + 1)
        throw ConfigError("CubicModel: monomial index out of range 2..n+1");
  }
}

CubicModel CubicModel::stu() { return CubicModel(3, {{{2, 3, 4}, 1.0}}); }

ComplexJet eval_jet(const Prepotential& P, std::span<const Complex> X) {
  return holomorphic_jet([&P](auto xs) { return P.eval(xs); }, X);
}

std::pair<double, double> homogeneity_residual(const Prepotential& P,
                                               std::span<const Complex> X) {
  ComplexJet jet = eval_jet(P, X);
  const int m = P.size();
  Complex euler1 = -2.0 * jet.value;
  for (int i = 0; i < m; ++i) euler1 += X[i] * jet.gradient(i);
  double r2 = 0.0;
  for (int i = 0; i < m; ++i) {
    Complex e = -jet.gradient(i);
    for (int j = 0; j < m; ++j) e += jet.hessian(i, j) * X[j];
    r2 = std::max(r2, std::abs(e));
  }
  return {std::abs(euler1), r2};
}

std::vector<Eigen::MatrixXcd> third_derivatives(const Prepotential& P,
                                                std::span<const Complex> X) {
  const int m = P.size();
  std::vector<Eigen::MatrixXcd> T(m, Eigen::MatrixXcd::Zero(m, m));
  // F_IJK = d/dX^K of F_IJ, one extra dual level around the Hessian.
  std::vector<D1> xd(X.begin(), X.end());
  for (int k = 0; k < m; ++k) {
    xd[k].b = 1.0;
    Mat<D1> h = detail::hessian_of_eval(P, std::span<const D1>(xd));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) T[k](i, j) = h(i, j).b;
    xd[k].b = 0.0;
  }
  return T;
}

}  // namespace cmap

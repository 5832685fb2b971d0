#pragma once

#include <Eigen/Core>
#include <cmath>
#include <span>
#include <vector>

#include "cmap/dual.hpp"
#include "cmap/errors.hpp"

namespace cmap {

/// Value, holomorphic gradient and Hessian of a function at a point.
struct ComplexJet {
  Complex value;
  Eigen::VectorXcd gradient;
  Eigen::MatrixXcd hessian;

  double hessian_asymmetry() const {
    return hessian.rows() == 0
               ? 0.0
               : (hessian - hessian.transpose()).cwiseAbs().maxCoeff();
  }
};

namespace detail {

inline bool finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// First-order seed: differentiates f along coordinate `dir`.
template <class S, class Fn>
S derivative_along(Fn&& f, std::span<const S> x, int dir) {
  std::vector<Dual<S>> xd(x.size());
  for (size_t i = 0; i < x.size(); ++i) xd[i] = Dual<S>(x[i]);
  xd[dir].b = S(1.0);
  return f(std::span<const Dual<S>>(xd)).b;
}

// Mixed second derivative via one nested evaluation.
template <class S, class Fn>
S second_derivative(Fn&& f, std::span<const S> x, int i, int j) {
  using DD = Dual<Dual<S>>;
  std::vector<DD> xd(x.size());
  for (size_t k = 0; k < x.size(); ++k) xd[k] = DD(Dual<S>(x[k]));
  xd[i].a.b = S(1.0);  // inner seed
  xd[j].b = Dual<S>(S(1.0));  // outer seed
  return f(std::span<const DD>(xd)).b.b;
}

template <class S, class Fn>
std::vector<S> gradient_of(Fn&& f, std::span<const S> x) {
  std::vector<S> g(x.size());
  for (size_t i = 0; i < x.size(); ++i)
    g[i] = derivative_along(f, x, static_cast<int>(i));
  return g;
}

}  // namespace detail

/// Exact jet of a holomorphic function of m complex variables by nested
/// dual-number propagation; no truncation error.  `f` must be callable on
/// spans of Complex, Dual<Complex> and Dual<Dual<Complex>>.
template <class Fn>
ComplexJet holomorphic_jet(Fn&& f, std::span<const Complex> x) {
  const int m = static_cast<int>(x.size());
  ComplexJet jet;
  jet.value = f(x);
  jet.gradient.resize(m);
  jet.hessian.resize(m, m);
  for (int i = 0; i < m; ++i)
    jet.gradient(i) = detail::derivative_along(f, x, i);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      jet.hessian(i, j) = detail::second_derivative(f, x, i, j);

  if (!detail::finite(jet.value))
    throw SingularEvaluation("non-finite value in holomorphic_jet", 0);
  for (int i = 0; i < m; ++i) {
    if (!detail::finite(jet.gradient(i)))
      throw SingularEvaluation("non-finite gradient in holomorphic_jet", i + 1);
    for (int j = 0; j < m; ++j)
      if (!detail::finite(jet.hessian(i, j)))
        throw SingularEvaluation("non-finite hessian in holomorphic_jet",
                                 i + 1);
  }
  return jet;
}

}  // namespace cmap

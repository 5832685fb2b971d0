#pragma once

#include <array>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "cmap/jets.hpp"
#include "cmap/smallmat.hpp"

namespace cmap {

/// Holomorphic prepotential, homogeneous of degree two in X^I, I = 1..n+1.
/// Interfaces use the 1-based labels with the special index at 1; storage is
/// 0-based (slot 0 is the special coordinate).
///
/// Evaluation is exposed at the scalar levels needed by the nested
/// dual-number machinery; concrete models implement one template through
/// PrepotentialModel below.
class Prepotential {
 public:
  virtual ~Prepotential() = default;

  /// Number of projective coordinates Z^A; X has n+1 entries.
  int n() const { return size_ - 1; }
  /// Number of X^I components, n+1.
  int size() const { return size_; }

  virtual Complex eval(std::span<const Complex> X) const = 0;
  virtual D1 eval(std::span<const D1> X) const = 0;
  virtual D2 eval(std::span<const D2> X) const = 0;
  virtual D3 eval(std::span<const D3> X) const = 0;
  virtual D4 eval(std::span<const D4> X) const = 0;

 protected:
  explicit Prepotential(int size) : size_(size) {}

 private:
  int size_;
};

template <class Derived>
class PrepotentialModel : public Prepotential {
 public:
  Complex eval(std::span<const Complex> X) const override { return impl(X); }
  D1 eval(std::span<const D1> X) const override { return impl(X); }
  D2 eval(std::span<const D2> X) const override { return impl(X); }
  D3 eval(std::span<const D3> X) const override { return impl(X); }
  D4 eval(std::span<const D4> X) const override { return impl(X); }

 protected:
  using Prepotential::Prepotential;

 private:
  template <class S>
  S impl(std::span<const S> X) const {
    return static_cast<const Derived&>(*this).template evaluate<S>(X);
  }
};

/// F = -i Σ_I s_I (X^I)^2 with s_1 = +1 and signature (+, -, ..., -) by
/// default, so the projective positivity domain is the open unit ball.
class QuadraticModel final : public PrepotentialModel<QuadraticModel> {
 public:
  explicit QuadraticModel(int n, std::vector<double> signs = {},
                          double add_constant = 0.0);

  template <class S>
  S evaluate(std::span<const S> X) const {
    S acc{};
    for (size_t i = 0; i < signs_.size(); ++i) acc += signs_[i] * X[i] * X[i];
    return Complex(0, -1) * acc + Complex(add_constant_);
  }

  const std::vector<double>& signs() const { return signs_; }
  double add_constant() const { return add_constant_; }

 private:
  std::vector<double> signs_;
  double add_constant_;  // deliberate homogeneity breaking, for gate tests
};

/// Cubic family F = d_ABC X^A X^B X^C / X^1 (A, B, C in 2..n+1) given by
/// monomials: an unordered triple with the coefficient of the monomial
/// product.  Singular exactly at X^1 = 0.
class CubicModel final : public PrepotentialModel<CubicModel> {
 public:
  struct Monomial {
    std::array<int, 3> abc;  // 1-based labels in 2..n+1, sorted
    double coeff;
  };

  CubicModel(int n, std::vector<Monomial> monomials, double add_constant = 0.0);

  /// F = X^2 X^3 X^4 / X^1.
  static CubicModel stu();

  template <class S>
  S evaluate(std::span<const S> X) const {
    if (abs_value(X[0]) == 0.0)
      throw SingularEvaluation("cubic prepotential pole at X^1 = 0", 1);
    S acc{};
    for (const auto& mono : monomials_)
      acc += mono.coeff * X[mono.abc[0] - 1] * X[mono.abc[1] - 1] *
             X[mono.abc[2] - 1];
    return acc / X[0] + Complex(add_constant_);
  }

  const std::vector<Monomial>& monomials() const { return monomials_; }
  double add_constant() const { return add_constant_; }

 private:
  std::vector<Monomial> monomials_;
  double add_constant_;
};

/// (F, F_I, F_IJ) at X, exact to machine precision.
ComplexJet eval_jet(const Prepotential& P, std::span<const Complex> X);

/// (‖X^I F_I - 2F‖, ‖F_IJ X^J - F_I‖∞): the Euler identities of degree-two
/// homogeneity, both zero for an admissible prepotential.
std::pair<double, double> homogeneity_residual(const Prepotential& P,
                                               std::span<const Complex> X);

/// Third derivatives F_IJK (totally symmetric), as matrices indexed by K.
std::vector<Eigen::MatrixXcd> third_derivatives(const Prepotential& P,
                                                std::span<const Complex> X);

namespace detail {

// F evaluated with conjugated coefficients: conj ∘ F ∘ conj, valid on dual
// towers (componentwise conjugation commutes with dual arithmetic).
template <class S>
S conj_eval(const Prepotential& P, std::span<const S> Y) {
  std::vector<S> yc(Y.begin(), Y.end());
  for (auto& y : yc) y = conj_tower(y);
  return conj_tower(P.eval(std::span<const S>(yc)));
}

template <class S>
std::vector<S> prepotential_gradient(const Prepotential& P,
                                     std::span<const S> X) {
  return gradient_of([&P](auto xs) { return P.eval(xs); }, X);
}

template <class S>
std::vector<S> conj_gradient(const Prepotential& P, std::span<const S> Y) {
  return gradient_of([&P](auto ys) { return conj_eval(P, ys); }, Y);
}

template <class S>
Mat<S> hessian_of_eval(const Prepotential& P, std::span<const S> X) {
  const int m = static_cast<int>(X.size());
  Mat<S> h(m, m);
  auto f = [&P](auto xs) { return P.eval(xs); };
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      h(i, j) = second_derivative(f, X, i, j);
      if (j != i) h(j, i) = h(i, j);
    }
  return h;
}

template <class S>
Mat<S> conj_hessian(const Prepotential& P, std::span<const S> Y) {
  const int m = static_cast<int>(Y.size());
  Mat<S> h(m, m);
  auto f = [&P](auto ys) { return conj_eval(P, ys); };
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      h(i, j) = second_derivative(f, Y, i, j);
      if (j != i) h(j, i) = h(i, j);
    }
  return h;
}

}  // namespace detail
}  // namespace cmap

#pragma once

#include <span>
#include <vector>

#include "cmap/dual.hpp"
#include "cmap/errors.hpp"

namespace cmap {

/// Dense matrix over an arbitrary scalar (complex, dual towers, ...).
/// Used wherever a linear solve or contraction has to run inside the
/// dual-number differentiation; plain double work goes through Eigen.
template <class T>
class Mat {
 public:
  Mat(int rows, int cols) : rows_(rows), cols_(cols), d_(rows * cols) {}

  T& operator()(int i, int j) { return d_[i * cols_ + j]; }
  const T& operator()(int i, int j) const { return d_[i * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_, cols_;
  std::vector<T> d_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting on the
/// magnitude of the value part.  A is taken by value and destroyed.
template <class T>
std::vector<T> solve_linear(Mat<T> A, std::vector<T> b) {
  const int n = A.rows();
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = abs_value(A(k, k));
    for (int i = k + 1; i < n; ++i) {
      double m = abs_value(A(i, k));
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (best == 0.0) throw DegeneratePoint("singular linear system");
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(A(k, j), A(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      T f = A(i, k) / A(k, k);
      for (int j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<T> x(n);
  for (int i = n - 1; i >= 0; --i) {
    T acc = b[i];
    for (int j = i + 1; j < n; ++j) acc -= A(i, j) * x[j];
    x[i] = acc / A(i, i);
  }
  return x;
}

template <class T>
T quadratic_form(const Mat<T>& A, std::span<const T> u, std::span<const T> v) {
  T acc{};
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) acc += u[i] * A(i, j) * v[j];
  return acc;
}

}  // namespace cmap

#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <type_traits>
#include <utility>

namespace cmap {

using Complex = std::complex<double>;

/// Forward-mode dual number over an arbitrary field T.  Nesting
/// (Dual<Dual<...>>) yields exact higher derivatives; all geometry in this
/// project differentiates through these rather than finite differences.
template <class T>
struct Dual {
  T a{};  // value
  T b{};  // derivative along the seeded direction

  Dual() = default;
  Dual(T value, T deriv) : a(std::move(value)), b(std::move(deriv)) {}

  template <class U>
    requires(!std::is_same_v<std::remove_cvref_t<U>, Dual> &&
             std::constructible_from<T, U>)
  Dual(const U& value) : a(value), b{} {}  // NOLINT: implicit promotion

  Dual operator-() const { return {-a, -b}; }

  Dual& operator+=(const Dual& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend Dual operator+(const Dual& x, const Dual& y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend Dual operator-(const Dual& x, const Dual& y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend Dual operator*(const Dual& x, const Dual& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a};
  }
  friend Dual operator/(const Dual& x, const Dual& y) {
    T q = x.a / y.a;
    return {q, (x.b - q * y.b) / y.a};
  }
};

using D1 = Dual<Complex>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;

inline double value_of(double x) { return x; }
inline Complex value_of(const Complex& x) { return x; }
template <class T>
auto value_of(const Dual<T>& d) {
  return value_of(d.a);
}

template <class T>
double abs_value(const T& x) {
  return std::abs(value_of(x));
}

// Componentwise conjugation of a dual tower.  For holomorphic f this turns an
// evaluation of f into one of the conjugate function: conj_tower(f(conj_tower(Y)))
// propagates derivatives of conj(f(conj(.))) correctly at every nesting level.
inline double conj_tower(double x) { return x; }
inline Complex conj_tower(const Complex& x) { return std::conj(x); }
template <class T>
Dual<T> conj_tower(const Dual<T>& d) {
  return {conj_tower(d.a), conj_tower(d.b)};
}

using std::exp;
using std::log;
using std::sqrt;

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T s = sqrt(x.a);
  return {s, x.b / (s + s)};
}

template <class T>
Dual<T> log(const Dual<T>& x) {
  return {log(x.a), x.b / x.a};
}

template <class T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.a);
  return {e, x.b * e};
}

}  // namespace cmap

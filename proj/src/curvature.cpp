#include "cmap/curvature.hpp"

#include <Eigen/LU>

#include "cmap/errors.hpp"

namespace cmap {
namespace {

// Fourth-order central first derivative of a matrix-valued function.
template <class Fn>
Eigen::MatrixXd d1(const Fn& f, const Eigen::VectorXd& x, int dir,
                   double h) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(x.size());
  e(dir) = h;
  return (-f(x + 2 * e) + 8 * f(x + e) - 8 * f(x - e) + f(x - 2 * e)) /
         (12.0 * h);
}

}  // namespace

std::vector<Eigen::MatrixXd> christoffel(const MetricFn& g,
                                         const Eigen::VectorXd& x,
                                         double step) {
  const int d = static_cast<int>(x.size());
  Eigen::MatrixXd g0 = g(x);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g0);
  if (!lu.isInvertible()) throw DegeneratePoint("christoffel: singular metric");
  Eigen::MatrixXd ginv = lu.inverse();

  std::vector<Eigen::MatrixXd> dg(d);
  for (int b = 0; b < d; ++b) dg[b] = d1(g, x, b, step);

  std::vector<Eigen::MatrixXd> gamma(d, Eigen::MatrixXd::Zero(d, d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = b; c < d; ++c) {
        double acc = 0.0;
        for (int e = 0; e < d; ++e)
          acc += ginv(a, e) * (dg[b](e, c) + dg[c](e, b) - dg[e](b, c));
        gamma[a](b, c) = 0.5 * acc;
        gamma[a](c, b) = gamma[a](b, c);
      }
  return gamma;
}

RealSymMatrix ricci(const MetricFn& g, const Eigen::VectorXd& x, double step) {
  const int d = static_cast<int>(x.size());
  std::vector<Eigen::MatrixXd> gamma = christoffel(g, x, step);

  // ∂_a Γ^a_{bc} and ∂_c Γ^a_{ba} by the same stencil over christoffel.
  // dgamma[dir][a](b,c)
  std::vector<std::vector<Eigen::MatrixXd>> dgamma(d);
  for (int dir = 0; dir < d; ++dir) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    e(dir) = step;
    auto at = [&](const Eigen::VectorXd& y) { return christoffel(g, y, step); };
    std::vector<Eigen::MatrixXd> p2 = at(x + 2 * e), p1 = at(x + e),
                                 m1 = at(x - e), m2 = at(x - 2 * e);
    dgamma[dir].resize(d);
    for (int a = 0; a < d; ++a)
      dgamma[dir][a] =
          (-p2[a] + 8 * p1[a] - 8 * m1[a] + m2[a]) / (12.0 * step);
  }

  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(d, d);
  for (int b = 0; b < d; ++b)
    for (int c = 0; c < d; ++c) {
      double acc = 0.0;
      for (int a = 0; a < d; ++a) {
        acc += dgamma[a][a](b, c) - dgamma[c][a](b, a);
        for (int e = 0; e < d; ++e)
          acc += gamma[a](a, e) * gamma[e](b, c) -
                 gamma[a](c, e) * gamma[e](b, a);
      }
      ric(b, c) = acc;
    }
  return RealSymMatrix(0.5 * (ric + ric.transpose()));
}

EinsteinResult einstein_residual(const MetricFn& g, const Eigen::VectorXd& x,
                                 double step) {
  Eigen::MatrixXd g0 = g(x);
  RealSymMatrix ric = ricci(g, x, step);
  const int d = static_cast<int>(x.size());
  EinsteinResult out;
  out.lambda = (g0.fullPivLu().solve(ric.m)).trace() / d;
  out.residual = (ric.m - out.lambda * g0).cwiseAbs().maxCoeff() /
                 g0.cwiseAbs().maxCoeff();
  return out;
}

}  // namespace cmap

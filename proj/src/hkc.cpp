#include "cmap/hkc.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>

namespace cmap {
namespace {

std::vector<Complex> to_vec(std::span<const Complex> v) {
  return {v.begin(), v.end()};
}

// Roots of v + ζG - ζ²v̄ for one component; empty when v = 0 (the root at
// the origin is the gauge zero, not a contour obstruction).
std::vector<Complex> component_roots(Complex v, double G) {
  std::vector<Complex> roots;
  Complex vb = std::conj(v);
  if (std::abs(v) == 0.0) return roots;
  // -v̄ ζ² + G ζ + v = 0
  Complex disc = std::sqrt(Complex(G * G, 0) + 4.0 * vb * v);
  roots.push_back((Complex(G) + disc) / (2.0 * vb));
  roots.push_back((Complex(G) - disc) / (2.0 * vb));
  return roots;
}

double min_root_modulus(std::span<const Complex> v, const Eigen::VectorXd& G) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < v.size(); ++i)
    for (Complex r : component_roots(v[i], G(static_cast<int>(i) + 1)))
      best = std::min(best, std::abs(r));
  return best;
}

// Real part with a scaled sanity bound on the imaginary part.
double take_real(Complex z, const char* what) {
  if (std::abs(z.imag()) > 1e-9 * (std::abs(z) + 1.0))
    throw ConsistencyError(std::string(what) +
                           ": unexpectedly complex result");
  return z.real();
}

struct LegendreParts {
  double K;
  Eigen::MatrixXd N;
  Eigen::VectorXd Ninv_wsum;
  double S;         // (w+w̄) N^{-1} (w+w̄)
  double radicand;  // S - (w+w̄)_0
};

LegendreParts legendre_parts(const Prepotential& P, std::span<const Complex> v,
                             double wsum0, const Eigen::VectorXd& wsumI) {
  std::vector<Complex> vb(v.begin(), v.end());
  for (auto& z : vb) z = std::conj(z);
  LegendreParts parts;
  parts.K = take_real(
      detail::rigid_kahler(P, v, std::span<const Complex>(vb)), "K");
  Mat<Complex> N = detail::matrix_n(P, v, std::span<const Complex>(vb));
  const int m = P.size();
  parts.N.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) parts.N(i, j) = take_real(N(i, j), "N");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(parts.N);
  if (!lu.isInvertible()) throw DegeneratePoint("legendre: N is singular");
  parts.Ninv_wsum = lu.solve(wsumI);
  parts.S = wsumI.dot(parts.Ninv_wsum);
  parts.radicand = parts.S - wsum0;
  return parts;
}

}  // namespace

Eigen::VectorXd legendre_stationarity_residual(const Prepotential& P,
                                               std::span<const Complex> v,
                                               double wsum0,
                                               const Eigen::VectorXd& wsumI,
                                               const Eigen::VectorXd& G) {
  const int m = P.size();
  std::vector<D1> vh(v.size()), vb(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    vh[i] = D1(v[i]);
    vb[i] = D1(std::conj(v[i]));
  }
  Eigen::VectorXd r(m + 1);
  for (int k = 0; k <= m; ++k) {
    D1 G0(G(0));
    std::vector<D1> GI(m);
    for (int i = 0; i < m; ++i) GI[i] = D1(G(i + 1));
    if (k == 0)
      G0.b = 1.0;
    else
      GI[k - 1].b = 1.0;
    D1 L = detail::call_l(P, std::span<const D1>(vh),
                          std::span<const D1>(vb), G0,
                          std::span<const D1>(GI));
    double dL = take_real(L.b, "dL/dG");
    r(k) = k == 0 ? dL - wsum0 : dL + wsumI(k - 1);
  }
  return r;
}

namespace {

Eigen::MatrixXd stationarity_jacobian(const Prepotential& P,
                                      std::span<const Complex> v,
                                      const Eigen::VectorXd& G) {
  const int m = P.size();
  std::vector<D2> vh(v.size()), vb(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    vh[i] = D2(D1(v[i]));
    vb[i] = D2(D1(std::conj(v[i])));
  }
  Eigen::MatrixXd H(m + 1, m + 1);
  for (int a = 0; a <= m; ++a)
    for (int b = a; b <= m; ++b) {
      D2 G0(D1(G(0)));
      std::vector<D2> GI(m);
      for (int i = 0; i < m; ++i) GI[i] = D2(D1(G(i + 1)));
      if (a == 0)
        G0.a.b = 1.0;
      else
        GI[a - 1].a.b = 1.0;
      if (b == 0)
        G0.b = D1(1.0);
      else
        GI[b - 1].b = D1(1.0);
      D2 L = detail::call_l(P, std::span<const D2>(vh),
                            std::span<const D2>(vb), G0,
                            std::span<const D2>(GI));
      H(a, b) = H(b, a) = take_real(L.b.b, "d2L/dG2");
    }
  return H;
}

}  // namespace

Complex h_function(const Prepotential& P, Complex eta0,
                   std::span<const Complex> etaI) {
  if (std::abs(eta0) == 0.0) throw PoleError("h_function: eta^0 = 0");
  return P.eval(etaI) / eta0;
}

double calL_closed(const Prepotential& P, std::span<const Complex> v,
                   const Eigen::VectorXd& G) {
  if (G(0) == 0.0) throw PoleError("calL: G^0 = 0");
  std::vector<Complex> vb = to_vec(v);
  for (auto& z : vb) z = std::conj(z);
  std::vector<Complex> GI(P.size());
  for (int i = 0; i < P.size(); ++i) GI[i] = G(i + 1);
  Complex L = detail::call_l(P, v, std::span<const Complex>(vb),
                             Complex(G(0)), std::span<const Complex>(GI));
  return take_real(L, "calL_closed");
}

double contour_radius(std::span<const Complex> v, const Eigen::VectorXd& G) {
  double m = min_root_modulus(v, G);
  return std::isfinite(m) ? 0.5 * m : 1.0;
}

double calL_contour(const Prepotential& P, std::span<const Complex> v,
                    const Eigen::VectorXd& G, const QuadratureConfig& cfg) {
  if (G(0) == 0.0) throw PoleError("calL: G^0 = 0");
  double min_root = min_root_modulus(v, G);
  double radius = cfg.radius.value_or(
      std::isfinite(min_root) ? 0.5 * min_root : 1.0);
  if (radius >= 0.999 * min_root)
    throw ContourPlacement("calL_contour: contour encloses a section root");

  const int m = P.size();
  auto integrand = [&](Complex zeta) {
    std::vector<Complex> u(m);
    for (int i = 0; i < m; ++i)
      u[i] = v[i] + zeta * G(i + 1) - zeta * zeta * std::conj(v[i]);
    Complex z3 = zeta * zeta * zeta;
    return P.eval(std::span<const Complex>(u)) / z3;
  };
  Complex I = circle_integral(integrand, radius, cfg.samples);
  return I.imag() / G(0);
}

Eigen::VectorXd legendre_solve(const Prepotential& P,
                               std::span<const Complex> v, double wsum0,
                               const Eigen::VectorXd& wsumI) {
  const int m = P.size();
  LegendreParts parts = legendre_parts(P, v, wsum0, wsumI);
  if (!(parts.K > 0.0))
    throw OutsideCone("legendre_solve: K(v, v̄) must be positive");
  if (!(parts.radicand > 0.0))
    throw OutsideCone("legendre_solve: nonpositive radicand");

  Eigen::VectorXd G(m + 1);
  G(0) = std::sqrt(parts.K / (2.0 * parts.radicand));
  G.tail(m) = 2.0 * G(0) * parts.Ninv_wsum;

  // Newton verification from the closed form; convergence in <= 5
  // iterations guards the sign conventions end to end.
  Eigen::VectorXd Gn = legendre_newton(P, v, wsum0, wsumI, G);
  if ((Gn - G).lpNorm<Eigen::Infinity>() >
      1e-10 * (1.0 + G.lpNorm<Eigen::Infinity>()))
    throw NumericalError(
        "legendre_solve: Newton and closed form disagree",
        (Gn - G).lpNorm<Eigen::Infinity>());
  return G;
}

Eigen::VectorXd legendre_newton(const Prepotential& P,
                                std::span<const Complex> v, double wsum0,
                                const Eigen::VectorXd& wsumI,
                                const Eigen::VectorXd& initial,
                                int max_iter) {
  double scale =
      1.0 + std::max(std::abs(wsum0), wsumI.lpNorm<Eigen::Infinity>());
  double tol = 1e-11 * scale;
  Eigen::VectorXd G = initial;
  Eigen::VectorXd r = legendre_stationarity_residual(P, v, wsum0, wsumI, G);
  int iter = 0;
  while (r.lpNorm<Eigen::Infinity>() > tol) {
    if (++iter > max_iter)
      throw NumericalError("legendre_newton: no convergence",
                           r.lpNorm<Eigen::Infinity>());
    Eigen::MatrixXd H = stationarity_jacobian(P, v, G);
    Eigen::VectorXd step = H.fullPivLu().solve(-r);
    double damping = 1.0;
    Eigen::VectorXd Gtry, rtry;
    for (int halvings = 0;; ++halvings) {
      Gtry = G + damping * step;
      rtry = legendre_stationarity_residual(P, v, wsum0, wsumI, Gtry);
      if (rtry.lpNorm<Eigen::Infinity>() < r.lpNorm<Eigen::Infinity>() ||
          halvings >= 10)
        break;
      damping *= 0.5;
    }
    G = Gtry;
    r = rtry;
  }
  return G;
}

ChiRoutes hk_potential_routes(const Prepotential& P, const HKCPoint& pt) {
  const int m = P.size();
  std::span<const Complex> v(pt.v.data(), pt.v.size());
  double wsum0 = pt.wsum0();
  Eigen::VectorXd wsumI = pt.wsum();

  LegendreParts parts = legendre_parts(P, v, wsum0, wsumI);
  if (!(parts.K > 0.0) || !(parts.radicand > 0.0))
    throw OutsideCone("hk_potential: outside the cone");

  ChiRoutes routes;
  routes.explicit_formula =
      std::sqrt(2.0) * std::sqrt(parts.K) * std::sqrt(parts.radicand);

  Eigen::VectorXd G = legendre_solve(P, v, wsum0, wsumI);
  routes.k_over_g0 = parts.K / G(0);

  std::vector<Complex> X(m), Xb(m);
  double root = std::sqrt(G(0));
  for (int i = 0; i < m; ++i) {
    X[i] = pt.v(i) / root;
    Xb[i] = std::conj(X[i]);
  }
  routes.k_at_scaled = take_real(
      detail::rigid_kahler(P, std::span<const Complex>(X),
                           std::span<const Complex>(Xb)),
      "K(X)");

  double ref = std::abs(routes.explicit_formula) + 1.0;
  if (std::abs(routes.explicit_formula - routes.k_over_g0) > 1e-10 * ref ||
      std::abs(routes.explicit_formula - routes.k_at_scaled) > 1e-10 * ref)
    throw ConsistencyError("hk_potential: three-way cross-check failed");
  return routes;
}

double hk_potential(const Prepotential& P, const HKCPoint& pt) {
  return hk_potential_routes(P, pt).explicit_formula;
}

LaplaceReport laplace_residual(const Prepotential& P,
                               std::span<const Complex> v,
                               const Eigen::VectorXd& G) {
  const int m = P.size();
  LaplaceReport rep;
  rep.block.resize(m, m);
  rep.index0.resize(m + 1);

  auto eval_d2 = [&](int seed_vh, int seed_vb, int seed_ga,
                     int seed_gb) -> double {
    std::vector<D2> vh(m), vb(m), GI(m);
    for (int i = 0; i < m; ++i) {
      vh[i] = D2(D1(v[i]));
      vb[i] = D2(D1(std::conj(v[i])));
      GI[i] = D2(D1(G(i + 1)));
    }
    D2 G0(D1(G(0)));
    if (seed_vh >= 0) vh[seed_vh].b = D1(1.0);
    if (seed_vb >= 0) vb[seed_vb].a.b = 1.0;
    if (seed_ga == 0)
      G0.b = D1(1.0);
    else if (seed_ga > 0)
      GI[seed_ga - 1].b = D1(1.0);
    if (seed_gb == 0)
      G0.a.b = 1.0;
    else if (seed_gb > 0)
      GI[seed_gb - 1].a.b = 1.0;
    D2 L = detail::call_l(P, std::span<const D2>(vh),
                          std::span<const D2>(vb), G0,
                          std::span<const D2>(GI));
    return take_real(L.b.b, "laplace");
  };

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double lgg = eval_d2(-1, -1, i + 1, j + 1);
      double lvv = eval_d2(i, j, -1, -1);
      rep.block(i, j) = lgg + lvv;
    }
  rep.index0(0) = eval_d2(-1, -1, 0, 0);
  for (int j = 0; j < m; ++j) rep.index0(j + 1) = eval_d2(-1, -1, 0, j + 1);
  return rep;
}

U1Report u1_invariance_residual(const Prepotential& P, const HKCPoint& pt,
                                double eps3) {
  const int m = P.size();
  Eigen::VectorXd G = legendre_solve(P, std::span<const Complex>(pt.v.data(), m),
                                     pt.wsum0(), pt.wsum());

  // v^I ℒ_{v^I} - v̄^I ℒ_{v̄^I} at the Legendre point.
  auto dL_dir = [&](bool holomorphic, int idx) -> Complex {
    std::vector<D1> vh(m), vb(m), GI(m);
    for (int i = 0; i < m; ++i) {
      vh[i] = D1(pt.v(i));
      vb[i] = D1(std::conj(pt.v(i)));
      GI[i] = D1(G(i + 1));
    }
    D1 G0(G(0));
    if (holomorphic)
      vh[idx].b = 1.0;
    else
      vb[idx].b = 1.0;
    return detail::call_l(P, std::span<const D1>(vh),
                          std::span<const D1>(vb), G0,
                          std::span<const D1>(GI))
        .b;
  };
  Complex s = 0.0;
  for (int i = 0; i < m; ++i)
    s += pt.v(i) * dL_dir(true, i) - std::conj(pt.v(i)) * dL_dir(false, i);

  U1Report rep;
  rep.l_residual = std::abs(s);

  // dχ/dt along v(t) = e^{-iε³t} v, w fixed, through the explicit formula.
  std::vector<D1> vh(m), vb(m);
  Complex mi(0, -1);
  for (int i = 0; i < m; ++i) {
    vh[i] = D1(pt.v(i), mi * eps3 * pt.v(i));
    vb[i] = D1(std::conj(pt.v(i)), std::conj(mi * eps3 * pt.v(i)));
  }
  D1 K = detail::rigid_kahler(P, std::span<const D1>(vh),
                              std::span<const D1>(vb));
  Mat<D1> N = detail::matrix_n(P, std::span<const D1>(vh),
                               std::span<const D1>(vb));
  Eigen::VectorXd wsumI = pt.wsum();
  std::vector<D1> rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = D1(wsumI(i));
  std::vector<D1> x = solve_linear(N, rhs);
  D1 S{};
  for (int i = 0; i < m; ++i) S += rhs[i] * x[i];
  D1 chi = sqrt(D1(2.0)) * sqrt(K) * sqrt(S - D1(pt.wsum0()));
  rep.flow_derivative = std::abs(chi.b);
  return rep;
}

}  // namespace cmap

#pragma once

#include <optional>

#include "cmap/quadrature.hpp"
#include "cmap/special_kahler.hpp"

namespace cmap {

/// Twistor-sphere section data: η^Î(ζ) = v^Î/ζ + G^Î - v̄^Î ζ with the
/// gauge v^0 = 0 held exactly (v stores only the n+1 components v^I).
/// G has n+2 real entries, G(0) = G^0.
struct O2Section {
  Eigen::VectorXcd v;
  Eigen::VectorXd G;

  Complex eta(int i_hat, Complex zeta) const {
    if (i_hat == 0) return G(0);  // v^0 = 0
    Complex vi = v(i_hat - 1);
    return vi / zeta + G(i_hat) - std::conj(vi) * zeta;
  }
};

/// Point on the gauge slice v^0 = 0 of the hyperkähler cone.  The geometry
/// depends on (w0, w) only through w + w̄.
struct HKCPoint {
  Eigen::VectorXcd v;
  Complex w0;
  Eigen::VectorXcd w;

  double wsum0() const { return 2.0 * w0.real(); }
  Eigen::VectorXd wsum() const { return 2.0 * w.real(); }
};

/// SU(2) generator parameters.  Only the ε³ flow stays on the v^0 = 0 gauge
/// slice and is implemented; ε± are carried for interface completeness.
struct SU2Params {
  double eps3 = 0.0;
  Complex eps_plus{};

  Complex eps_minus() const { return std::conj(eps_plus); }
};

struct QuadratureConfig {
  std::optional<double> radius;  // default: half the smallest root modulus
  int samples = kDefaultContourSamples;
};

/// H(η^I, η^0) = F(η^I)/η^0, homogeneous of degree one jointly.
Complex h_function(const Prepotential& P, Complex eta0,
                   std::span<const Complex> etaI);

/// Closed form of the section Lagrangian:
///   ℒ = (1/4G^0)(2 K(v, v̄) - N_IJ(v) G^I G^J),
/// normalized so that it equals the contour-integral route exactly.
double calL_closed(const Prepotential& P, std::span<const Complex> v,
                   const Eigen::VectorXd& G);

/// Same quantity as (1/G^0)·Im (1/2πi) ∮ dζ F(ζη(ζ))/ζ³ by circle
/// quadrature; the independent numerical route.
double calL_contour(const Prepotential& P, std::span<const Complex> v,
                    const Eigen::VectorXd& G, const QuadratureConfig& cfg = {});

/// Default contour radius: half the smallest root modulus of the quadratics
/// ζη^I(ζ) = v^I + ζG^I - ζ²v̄^I, keeping every non-origin singularity
/// outside the contour.
double contour_radius(std::span<const Complex> v, const Eigen::VectorXd& G);

/// Stationary G of the Legendre transform
///   χ = ℒ - (w+w̄)_0 G^0 + (w+w̄)_I G^I,
/// with G^0 > 0: G^I = 2 G^0 N^{IJ}(w+w̄)_J and
/// (G^0)² = K / (2((w+w̄)N^{-1}(w+w̄) - (w+w̄)_0)).  The closed form is
/// verified on the spot by a damped Newton solve of the stationarity
/// conditions (∂ℒ/∂G^0 = (w+w̄)_0, ∂ℒ/∂G^I = -(w+w̄)_I).
Eigen::VectorXd legendre_solve(const Prepotential& P,
                               std::span<const Complex> v, double wsum0,
                               const Eigen::VectorXd& wsumI);

/// Stationarity residual r(G) = (∂ℒ/∂G^0 - (w+w̄)_0, ∂ℒ/∂G^I + (w+w̄)_I);
/// vanishes at the Legendre point (the involution property).
Eigen::VectorXd legendre_stationarity_residual(const Prepotential& P,
                                               std::span<const Complex> v,
                                               double wsum0,
                                               const Eigen::VectorXd& wsumI,
                                               const Eigen::VectorXd& G);

/// Damped Newton on the stationarity conditions from `initial`; must reach
/// the root within `max_iter` iterations or throws NumericalError carrying
/// the last residual.
Eigen::VectorXd legendre_newton(const Prepotential& P,
                                std::span<const Complex> v, double wsum0,
                                const Eigen::VectorXd& wsumI,
                                const Eigen::VectorXd& initial,
                                int max_iter = 5);

struct ChiRoutes {
  double explicit_formula;  // √2 √K √((w+w̄)N⁻¹(w+w̄) - (w+w̄)_0)
  double k_over_g0;         // K(v,v̄)/G^0 at the Legendre point
  double k_at_scaled;       // K evaluated at X = v/√G^0
};

/// All three routes to the hyperkähler potential; they are cross-checked to
/// 1e-10 relative before returning.
ChiRoutes hk_potential_routes(const Prepotential& P, const HKCPoint& pt);

/// χ(v, v̄, w + w̄) > 0 (explicit-formula route, after the cross-check).
double hk_potential(const Prepotential& P, const HKCPoint& pt);

struct LaplaceReport {
  /// ℒ_{G^I G^J} + ℒ_{v^I v̄^J} over I, J ≥ 1 (vanishes identically).
  Eigen::MatrixXd block;
  /// Recorded, generically nonzero: [ℒ_{G^0G^0}, ℒ_{G^0G^1}, ...].
  Eigen::VectorXd index0;
};

LaplaceReport laplace_residual(const Prepotential& P,
                               std::span<const Complex> v,
                               const Eigen::VectorXd& G);

struct U1Report {
  /// |v^I ℒ_{v^I} - v̄^I ℒ_{v̄^I}| at the Legendre point.
  double l_residual;
  /// |dχ/dt| along δv = -iε³ v with w fixed.
  double flow_derivative;
};

U1Report u1_invariance_residual(const Prepotential& P, const HKCPoint& pt,
                                double eps3 = 1.0);

namespace detail {

// ℒ at generic scalars with (vh, vb) independent; G entries scalar too so
// the same template serves d/dG and d/dv derivatives.
template <class S>
S call_l(const Prepotential& P, std::span<const S> vh, std::span<const S> vb,
         const S& G0, std::span<const S> GI) {
  S K = rigid_kahler(P, vh, vb);
  Mat<S> N = matrix_n(P, vh, vb);
  S q = quadratic_form(N, GI, GI);
  return (2.0 * K - q) / (4.0 * G0);
}

}  // namespace detail
}  // namespace cmap

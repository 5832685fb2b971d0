#pragma once

#include "cmap/hkc.hpp"
#include "cmap/qk_metric.hpp"

namespace cmap {

/// Holomorphic coordinates z^α = (w_1..w_{n+1}, w_0, Z^2..Z^{n+1}) on the
/// v^1 = 1 slice; complex dimension 2(n+1).
struct TwistorPoint {
  ProjectivePoint Z;
  Complex w0;
  Eigen::VectorXcd w;

  int n() const { return Z.n(); }
  int complex_dim() const { return 2 * (n() + 1); }
};

/// K_T = ½[𝒦(Z,Z̄) + ln((w+w̄)N^{-1}(w+w̄) - (w+w̄)_0)] + ln√2;
/// satisfies e^{K_T} = χ at v^1 = 1.  The additive constant is load-bearing
/// in the metric formula below.
double twistor_potential(const Prepotential& P, const TwistorPoint& pt);

/// Components of 𝒳 = 2Z^I dw_I over z^α: (2Z^1..2Z^{n+1}, 0, 0..0).
Eigen::VectorXcd holomorphic_one_form(const TwistorPoint& pt);

/// G_{αβ̄} = K_{T,αβ̄} - e^{-2K_T} 𝒳_α 𝒳̄_β̄, the quaternion-Kähler metric
/// in holomorphic coordinates; K_{T,αβ̄} by nested dual numbers.
HermitianMatrix qk_metric_from_twistor(const Prepotential& P,
                                       const TwistorPoint& pt);

/// w_0 = i A^I A^J F_IJ - i(σ + ½A^I B_I) - e^φ,  w_I = i F_IJ A^J - (i/2)B_I
/// with F_IJ at Z.
TwistorPoint coords_fs_to_twistor(const Prepotential& P, const FSPoint& pt);

/// Analytic Jacobian ∂z^α/∂x^μ of the map above, over the frozen real FS
/// basis; the map is polynomial in (A, B, σ, e^φ) and holomorphic in Z.
Eigen::MatrixXcd fs_to_twistor_jacobian(const Prepotential& P,
                                        const FSPoint& pt);

struct MetricComparison {
  double constant;     // scalar c minimizing ‖c·M_twistor - M_FS‖
  double max_rel_dev;  // max |c·M_twistor - M_FS| / ‖M_FS‖_max
  RealSymMatrix fs;
  RealSymMatrix twistor_pullback;
};

/// Pulls qk_metric_from_twistor back to the real FS coordinates through the
/// analytic Jacobian (same factor-2 hermitian realization as fs_metric) and
/// fits the single proportionality constant.
MetricComparison compare_metrics(const Prepotential& P, const FSPoint& pt);

}  // namespace cmap

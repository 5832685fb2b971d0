#pragma once

#include "cmap/hkc.hpp"
#include "cmap/qk_metric.hpp"
#include "cmap/rng.hpp"

namespace cmap {

/// Per-coordinate rectangles for rejection sampling of Z^A.
struct SampleBox {
  Eigen::VectorXd re_lo, re_hi, im_lo, im_hi;

  int n() const { return static_cast<int>(re_lo.size()); }
};

/// Heuristic default box per model family; domain_check stays authoritative.
/// Quadratic: Re, Im in [-0.7, 0.7] (unit-ball domain).  Cubic: Re in
/// [-0.5, 0.5], Im in [0.5, 2.0] except the last coordinate in [-2.0, -0.5]
/// (the positivity domain needs an odd number of negative imaginary parts
/// for the built-in coefficient sign).
SampleBox default_box(const Prepotential& P);

/// Rejection-samples a point passing all three domain verdicts.
ProjectivePoint sample_projective(const Prepotential& P, const SampleBox& box,
                                  Xoshiro256& rng, int max_tries = 20000);

/// Domain point plus fiber coordinates: φ in [-0.5, 0.5], σ, A, B in [-1, 1].
FSPoint sample_fs(const Prepotential& P, const SampleBox& box, Xoshiro256& rng);

/// Cone point: v = s e^{iθ} Z with s in [0.5, 2), plus w built so that the
/// Legendre radicand lands in [0.25, 4); imaginary parts of w are free.
HKCPoint sample_hkc(const Prepotential& P, const SampleBox& box,
                    Xoshiro256& rng);

/// (v, G) pair for section-Lagrangian sweeps: G^0 in [0.5, 2), G^I in [-1, 1].
std::pair<Eigen::VectorXcd, Eigen::VectorXd> sample_section(
    const Prepotential& P, const SampleBox& box, Xoshiro256& rng);

/// Group element with all parameters in [-scale, scale].
GActionParams sample_group_element(Xoshiro256& rng, int m, double scale = 1.0);

}  // namespace cmap

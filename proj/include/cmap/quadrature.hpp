#pragma once

#include <functional>

#include "cmap/dual.hpp"

namespace cmap {

constexpr int kMinContourSamples = 16;
constexpr int kDefaultContourSamples = 256;

/// (1/2πi) ∮ g(ζ) dζ on the circle |ζ| = radius, by the equally spaced
/// trapezoid rule, which is spectrally accurate for g analytic in an annulus
/// around the contour.  Throws ConfigError for samples < 16 or radius <= 0.
Complex circle_integral(const std::function<Complex(Complex)>& g, double radius,
                        int samples = kDefaultContourSamples);

}  // namespace cmap

#include "cmap/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "cmap/errors.hpp"

namespace cmap {

Complex circle_integral(const std::function<Complex(Complex)>& g, double radius,
                        int samples) {
  if (samples < kMinContourSamples)
    throw ConfigError("circle_integral: samples below minimum of 16");
  if (!(radius > 0.0)) throw ConfigError("circle_integral: radius must be > 0");

  // (1/2πi) ∮ g dζ = (1/M) Σ g(ζ_k) ζ_k  at  ζ_k = r e^{2πik/M}.
  Complex acc = 0.0;
  for (int k = 0; k < samples; ++k) {
    double t = 2.0 * std::numbers::pi * k / samples;
    Complex zeta = radius * Complex(std::cos(t), std::sin(t));
    acc += g(zeta) * zeta;
  }
  return acc / static_cast<double>(samples);
}

}  // namespace cmap

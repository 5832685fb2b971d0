#pragma once

#include <functional>
#include <vector>

#include "cmap/linalg.hpp"

namespace cmap {

using MetricFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

constexpr double kCurvatureStep = 1e-3;

/// Levi-Civita Γ^a_{bc} from fourth-order central differences of the metric,
/// exactly symmetric in (b, c).  Returned as matrices indexed by a.
std::vector<Eigen::MatrixXd> christoffel(const MetricFn& g,
                                         const Eigen::VectorXd& x,
                                         double step = kCurvatureStep);

/// Ricci tensor by a nested stencil over christoffel.
RealSymMatrix ricci(const MetricFn& g, const Eigen::VectorXd& x,
                    double step = kCurvatureStep);

struct EinsteinResult {
  double lambda;    // tr(g^{-1} Ric)/dim
  double residual;  // ‖Ric - λg‖∞ / ‖g‖∞
};

EinsteinResult einstein_residual(const MetricFn& g, const Eigen::VectorXd& x,
                                 double step = kCurvatureStep);

}  // namespace cmap

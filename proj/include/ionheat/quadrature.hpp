#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace ionheat {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t intervals = 0;
};

// Adaptive Gauss-Kronrod (7/15) integration over [a, b]. The worst interval
// is bisected until the summed error estimate drops below abs_tol or the
// interval budget runs out; running out throws with the achieved tolerance.
// split_points pre-partitions the range, which keeps oscillatory integrands
// resolved from the start instead of relying on blind bisection.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::size_t max_intervals = 10000,
                                    std::span<const double> split_points = {});

}  // namespace ionheat

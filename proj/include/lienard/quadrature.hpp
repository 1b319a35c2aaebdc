#pragma once

#include <functional>

namespace lienard {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  /// Relative floor so that large integrals are not asked for sub-roundoff accuracy.
  double rel_tol = 1e-13;
  int max_intervals = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Globally adaptive 7-point Gauss / 15-point Kronrod quadrature: the interval
/// with the largest error estimate is bisected until the summed estimate is
/// below max(abs_tol, rel_tol |value|). Throws QuadratureFailure when the
/// interval cap is reached first.
QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& opts = {});

}  // namespace lienard

#pragma once

#include <cstdint>
#include <vector>

#include "lienard/half_power_poly.hpp"
#include "lienard/system.hpp"

namespace lienard {

struct DesignOptions {
  double lambda = 0.01;
  double eps = 1e-4;
  int max_iterations = 200;
  double tolerance = 1e-9;  // relative residual of the Newton solve (SwitchX)
  std::uint64_t seed = 1;
};

struct DesignResult {
  LienardSystem system;
  /// The M1 the design aimed at (coefficients in h^(k/2), exact for SwitchY).
  HalfPowerPoly target;
  /// Max coefficient mismatch between M1 of the designed system and the target,
  /// relative to the largest target coefficient. Zero for SwitchY.
  double residual = 0.0;
  int iterations = 0;
};

/// Doubled h-exponents of M1 that the design can set for the given shape, in
/// increasing order. SwitchY designs keep f0 = 0.
std::vector<int> design_exponents(SwitchCase kase, int m, int n);

/// A system of the given shape whose M0 vanishes identically and whose M1 has
/// simple zeros exactly at the targets (h > 0, distinct). No targets give the zero system.
/// Throws TooManyTargets, InfeasibleShape or NoConvergence.
DesignResult design_case_y(int m, int n, const std::vector<double>& targets, const DesignOptions& opts = {});
DesignResult design_case_x(int m, int n, const std::vector<double>& targets, const DesignOptions& opts = {});
DesignResult design(SwitchCase kase, int m, int n, const std::vector<double>& targets, const DesignOptions& opts = {});

}  // namespace lienard

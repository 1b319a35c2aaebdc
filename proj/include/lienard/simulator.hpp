#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lienard/errors.hpp"
#include "lienard/execution.hpp"
#include "lienard/system.hpp"

namespace lienard {

using State = std::array<double, 2>;  // (x, y)

struct SimConfig {
  double lambda = 0.0;
  double eps = 0.0;
  double rk_tol = 1e-10;
  double event_tol = 1e-12;
  long max_steps = 200000;
  double r_min = 1e-3;
  double r_max = 1e3;
  /// Crossings with a smaller normal velocity are rejected (no sliding motion).
  double min_normal_speed = 1e-8;
  /// |d| below this on the whole grid is reported as a non-isolated (center-like) family.
  double degenerate_tol = 1e-9;

  static SimConfig from_system(const LienardSystem& sys);
  void validate() const;
};

/// y' = -x - y damping(x) - side switched(x),  x' = y.
/// The switching coordinate is y for SwitchY and x for SwitchX.
struct PlanarField {
  SwitchCase kase = SwitchCase::SwitchY;
  std::vector<double> damping;   // eps (f0 + lambda f1)
  std::vector<double> switched;  // lambda g + eps (g0 + lambda g1)

  static PlanarField from_system(const LienardSystem& sys, double lambda, double eps);
  static PlanarField from_theorem(const TheoremForm& t);

  /// Index of the switching coordinate in State.
  int switch_index() const { return kase == SwitchCase::SwitchY ? 1 : 0; }
};

State vector_field(const PlanarField& field, const State& s, int side);
State vector_field(const LienardSystem& sys, const State& s, int side, double lambda, double eps);

enum class TimeDirection { Forward, Backward };

struct Crossing {
  double t;
  State point;  // before projection onto the switching line
  int side_before;
  int side_after;
};

struct TrajectorySample {
  double t;
  State point;
  int side;
};

struct ReturnResult {
  double coord = 0.0;  // section coordinate of the return point
  State point{};
  double time = 0.0;
  long steps = 0;
  std::vector<Crossing> crossings;
};

/// Section point with coordinate r: (r, 0) for SwitchY, (0, r) for SwitchX.
State section_point(SwitchCase kase, double r);

/// Integrates from the section point until the first return to the positive
/// half of the switching line with the same crossing direction.
/// Throws EscapeAnnulus, MaxStepsExceeded or TransversalityLost.
ReturnResult advance_to_section(const PlanarField& field, double start_coord, const SimConfig& config,
                                TimeDirection dir = TimeDirection::Forward,
                                std::vector<TrajectorySample>* trajectory = nullptr);

/// Return coordinate minus start coordinate.
double displacement(const PlanarField& field, double r, const SimConfig& config);

struct DisplacementSample {
  double r = 0.0;
  double d = 0.0;
  bool ok = false;
  std::optional<ErrorKind> failure;
};

std::vector<DisplacementSample> scan_displacement(const PlanarField& field, const std::vector<double>& radii,
                                                  const SimConfig& config, Execution exec = Execution::Parallel);

struct CycleReport {
  double section_coord = 0.0;
  double h_star = 0.0;  // section_coord^2 / 2
  double radius = 0.0;
  double residual = 0.0;
  /// Secant slope of d (= return-map slope - 1); negative means attracting.
  double stability_slope = 0.0;
  bool stable = false;
  std::vector<int> side_sequence;
};

struct CycleScan {
  std::vector<CycleReport> cycles;
  std::vector<DisplacementSample> samples;
  bool non_isolated = false;
};

/// Grid scan of d on [r_lo, r_hi] followed by bisection of every sign change
/// until |d| <= 1e-9 r.
CycleScan find_cycles(const PlanarField& field, double r_lo, double r_hi, int grid_n, const SimConfig& config,
                      Execution exec = Execution::Parallel);

}  // namespace lienard

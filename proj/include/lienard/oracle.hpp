#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lienard/execution.hpp"
#include "lienard/quadrature.hpp"
#include "lienard/simulator.hpp"
#include "lienard/system.hpp"

namespace lienard {

// Independent quadrature evaluation of the Melnikov integrals on the circle
// L0(h): x^2 + y^2 = 2h. SwitchY integrals are written in the swapped
// coordinates (x <-> y, reversed time) in which the switching line is x = 0;
// SwitchX integrals in the original ones. A = (0, sqrt(2h)), B = (0, -sqrt(2h)).

enum class ArcHalf { RightHalf, LeftHalf };
enum class Differential { Dx, Dy, Dt };

/// Clockwise arc of L0(h): RightHalf is A -> B through x >= 0, LeftHalf is B -> A through x <= 0.
struct ArcSpec {
  double h = 1.0;
  ArcHalf half = ArcHalf::RightHalf;
};

/// Oriented integral of F(x, y) dx, F dy or F dt along the arc. Both halves are
/// parameterized over [-pi/2, pi/2]; AB by angle decreasing from pi/2.
QuadratureResult arc_integral(const ArcSpec& arc, Differential d, const std::function<double(double, double)>& F,
                              const QuadratureOptions& opts = {});

struct EndpointDerivatives {
  double da_dlambda = 0.0;
  double db_dlambda = 0.0;
};

/// Lambda-derivatives at lambda = 0 of the roots a > 0 > b of y^2/2 + lambda G(y) = h.
EndpointDerivatives endpoint_derivatives(const std::vector<double>& g, double h);

/// d/dlambda at lambda = 0 of (a + lambda g(a)) / (a - lambda g(a)), i.e. 2 g(a)/a.
double i4_factor(const std::vector<double>& g, double h);

/// Antiderivative G(y) = int_0^y g.
double antiderivative_eval(const std::vector<double>& g, double y);

struct OracleValue {
  double value = 0.0;
  double error = 0.0;  // quadrature error estimate (0 for pointwise terms)
};

/// Term I_index (SwitchY: 0..4, SwitchX: 0..3). Throws QuadratureFailure.
OracleValue quad_I(const LienardSystem& sys, double h, int index, const QuadratureOptions& opts = {});

double oracle_m0(const LienardSystem& sys, double h, const QuadratureOptions& opts = {});
double oracle_m1(const LienardSystem& sys, double h, const QuadratureOptions& opts = {});

/// (H+(return) - H+(start)) / eps after one return of the simulated system,
/// starting from the section point on the H+ = h level. SwitchY is integrated
/// in reversed original time, which is forward time in the swapped frame.
double fd_bifurcation_estimate(const LienardSystem& sys, double h, double lambda, double eps,
                               SimConfig config = {});

/// One CSV row of the closed-form vs quadrature comparison.
struct OracleRow {
  std::size_t system = 0;
  SwitchCase kase = SwitchCase::SwitchY;
  double h = 0.0;
  std::string term;  // "I0".."I4", "M0", "M1"
  double oracle_value = 0.0;
  double closedform_value = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;  // abs_err / (1 + |closed form|)
};

std::string oracle_csv_header();
std::string to_csv(const OracleRow& row);

/// Compares every available closed-form term against quadrature for every
/// (system, h) pair. Terms whose closed form needs an unmet hypothesis are skipped.
std::vector<OracleRow> oracle_sweep(const std::vector<LienardSystem>& systems, const std::vector<double>& hs,
                                    Execution exec = Execution::Parallel, const QuadratureOptions& opts = {});

}  // namespace lienard

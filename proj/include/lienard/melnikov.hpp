#pragma once

#include <array>
#include <optional>

#include "lienard/half_power_poly.hpp"
#include "lienard/system.hpp"

namespace lienard {

enum class Which { M0, M1 };

struct AssemblyOptions {
  /// Zero the even parts of f0 (and g0 for SwitchY) instead of rejecting them.
  bool project_odd = false;
};

/// M(h, lambda) = M0(h) + lambda M1(h) + O(lambda^2).
struct MelnikovExpansion {
  SwitchCase kase = SwitchCase::SwitchY;
  int m = 0;
  int n = 0;
  HalfPowerPoly M0;
  /// Absent when the oddness hypothesis fails and projection was not requested.
  std::optional<HalfPowerPoly> M1;
};

/// Closed-form value of each integral term: SwitchY has I0..I4 with
/// M0 = I0 and M1 = I1+I2+I3+I4, SwitchX has I0..I3 with M1 = I1+I2+I3.
/// Terms whose closed form needs the oddness hypothesis are empty when it fails.
struct IntegralTerms {
  SwitchCase kase = SwitchCase::SwitchY;
  std::array<std::optional<HalfPowerPoly>, 5> I;

  int count() const { return kase == SwitchCase::SwitchY ? 5 : 4; }
};

// Coefficient maps -------------------------------------------------------

/// Integral of cos^(2i+1) over [0, pi/2] = prod_{l=1..i} 2l/(2l+1).
RingElem wallis_odd(int i);
/// Integral of sin^j over [0, 2 pi] for even j = 2 pi prod_{l=1..j/2} (2l-1)/(2l).
RingElem wallis_even(int j);

/// a~_j = factor * a_{2j}. SwitchY: (2 pi/(j+1)) prod_{l<=j} (2l-1)/l; SwitchX: the negative.
RingElem a_tilde_factor(SwitchCase kase, int j);
/// SwitchY: b~_j = 2^(j+5/2)/(2j+1) * b_{2j}.
RingElem b_tilde_factor(int j);
/// SwitchY: b*_i = -2^(i+1) b0_{2i+1}.
RingElem b_star_factor(int i);
/// SwitchY: c*_j = 2^(j+3/2)/(2j+1) * c_{2j}.
RingElem c_star_factor(int j);
/// SwitchX: integral of x^(2l+3)/sqrt(2h-x^2) over [0, sqrt(2h)] = factor * h^(l+3/2).
RingElem half_arc_moment_factor(int l);
/// SwitchX: a^_i = factor * a0_{2i+1} = -(2^(i+5/2)/(2i+3)) W(i) a0_{2i+1}.
RingElem a_hat_factor(int i);

// Assembly ---------------------------------------------------------------

HalfPowerPoly case_y_m0(const LienardSystem& sys);
HalfPowerPoly case_y_m1(const LienardSystem& sys, AssemblyOptions opts = {});
HalfPowerPoly case_x_m0(const LienardSystem& sys);
HalfPowerPoly case_x_m1(const LienardSystem& sys, AssemblyOptions opts = {});

IntegralTerms closed_form_terms(const LienardSystem& sys);
MelnikovExpansion assemble(const LienardSystem& sys, AssemblyOptions opts = {});

/// Maximal number of isolated positive zeros of M0 or M1 for the given shape.
int zero_bound(SwitchCase kase, int m, int n, Which which);

}  // namespace lienard

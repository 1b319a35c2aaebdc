#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lienard/ring.hpp"

namespace lienard {

/// Which coordinate axis carries the switching: SwitchY uses sgn(y) (the
/// x-axis is the switching line), SwitchX uses sgn(x).
enum class SwitchCase { SwitchY, SwitchX };

std::string_view to_string(SwitchCase c);
SwitchCase parse_switch_case(std::string_view s);

/// Piecewise Lienard system
///
///   x' = y
///   y' = -x - lambda sgn(.) g(x) - eps [ y (f0(x) + lambda f1(x)) + sgn(.) (g0(x) + lambda g1(x)) ]
///
/// with f_i = sum a_i[j] x^j (j <= m), g_i = sum b_i[j] x^j and g = sum c[j] x^j (j <= n).
/// Degrees are upper bounds: trailing coefficients may be zero.
struct LienardSystem {
  SwitchCase kase = SwitchCase::SwitchY;
  int m = 0;
  int n = 0;
  std::vector<RingElem> a0, a1;  // f0, f1
  std::vector<RingElem> b0, b1;  // g0, g1
  std::vector<RingElem> c;       // g
  double lambda = 0.0;
  double eps = 0.0;

  /// All coefficients zero, arrays sized m+1 / n+1.
  static LienardSystem zero(SwitchCase kase, int m, int n);

  /// Throws InvalidInput when array lengths or parameters are inconsistent.
  void validate() const;

  friend bool operator==(const LienardSystem&, const LienardSystem&) = default;
};

/// True when every even-index coefficient is zero.
bool is_odd(const std::vector<RingElem>& coeffs);

/// Copy with even-index coefficients of f0 and (for SwitchY) g0 set to zero.
LienardSystem project_odd(const LienardSystem& sys);

std::vector<double> to_doubles(const std::vector<RingElem>& coeffs);

/// Folded one-parameter form  y' = -x - lambda [ y fbar(x) + sgn(.) gbar(x) ].
struct TheoremForm {
  SwitchCase kase = SwitchCase::SwitchY;
  std::vector<double> fbar;
  std::vector<double> gbar;
  double lambda = 0.0;
  double delta = 0.0;
};

/// delta = eps/lambda, fbar = delta (f0 + lambda f1), gbar = g + delta (g0 + lambda g1).
TheoremForm fold_to_theorem_form(const LienardSystem& sys);

}  // namespace lienard

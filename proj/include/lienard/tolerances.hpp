#pragma once

#include <string>

namespace lienard {

struct Tolerances {
  double oracle_rel = 1e-8;      // closed form vs quadrature, relative to 1 + |value|
  double vanish_abs = 1e-9;      // terms that must vanish identically
  double root_width = 1e-12;     // width of refined root intervals in s
  double quad_abs = 1e-10;
  double quad_rel = 1e-13;
  double rk_tol = 1e-10;
  double event_tol = 1e-12;
  double design_residual = 1e-9;
  double cycle_rel = 0.1;        // simulated h* vs predicted zero

  /// Parses "key=value;key=value" with the field names above. Throws InvalidInput.
  static Tolerances parse(const std::string& text);
  static Tolerances parse(const std::string& text, Tolerances base);
  /// Defaults overridden by LIENARD_TOLERANCES when set.
  static Tolerances from_env();

  std::string to_string() const;
};

}  // namespace lienard

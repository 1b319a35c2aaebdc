#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lienard/half_power_poly.hpp"

namespace lienard {

enum class Certificate {
  SimpleSignChange,           // Descartes count 1 on the isolating interval
  OddMultiplicitySignChange,  // cluster of width below the resolution with a sign change
  SuspectedEvenMultiplicity,  // cluster without a sign change; reported, not counted
};

std::string to_string(Certificate c);

struct RootOptions {
  double width = 1e-12;          // final width of refined intervals in s
  double cluster_width = 1e-9;   // subdivision stops below this width
  int max_depth = 200;
};

struct RootInterval {
  double s_lo = 0.0;
  double s_hi = 0.0;
  double s_mid = 0.0;
  double h_mid = 0.0;
  Certificate certificate = Certificate::SimpleSignChange;
};

struct RootReport {
  /// All roots in increasing order, suspected even ones included.
  std::vector<RootInterval> roots;
  /// Sign variations of the coefficient sequence in s.
  int descartes_bound = 0;
  std::optional<int> theorem_bound;

  /// Roots certified by a sign change.
  int certified_count() const;
};

/// Positive zeros h > 0 of P, found as zeros of Q(s) = P(s^2) on (0, inf).
/// Throws ZeroPolynomial for P = 0 and PrecisionLoss when the coefficients
/// cannot be represented in long double.
RootReport isolate_positive_roots(const HalfPowerPoly& p, const RootOptions& opts = {});

/// Same on a dense s-polynomial (index = power).
RootReport isolate_positive_roots_s(const std::vector<long double>& q, const RootOptions& opts = {});

struct BoundCheck {
  bool ok = false;        // certified count <= bound
  bool certified = false; // every reported root carries a sign-change certificate
  int bound = 0;
  int count = 0;
  int slack = 0;          // bound - count
  std::string diagnostics;
};

BoundCheck check_against_bound(const RootReport& report, int bound);

std::string roots_csv_header();
std::string to_csv(const RootReport& report);

}  // namespace lienard

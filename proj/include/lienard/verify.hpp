#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lienard/execution.hpp"
#include "lienard/melnikov.hpp"
#include "lienard/roots.hpp"
#include "lienard/system.hpp"
#include "lienard/tolerances.hpp"

namespace lienard {

struct VerifyOptions {
  Tolerances tol;
  std::vector<double> hs{0.5, 1.0, 2.0, 3.0};
  bool simulate = false;
  int sim_grid = 120;
  /// Replaces the assembled closed forms (negative controls in tests).
  std::optional<IntegralTerms> closed_form_override;
  Execution exec = Execution::Parallel;
};

struct VerifyRow {
  std::string stage;  // oracle, roots, simulate
  std::string term;
  double h = 0.0;
  double value = 0.0;
  double reference = 0.0;
  double error = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  bool pass = true;
  std::optional<std::size_t> first_failure;
  /// Term of the first failing row, e.g. "I3".
  std::string first_failing_term;
  std::optional<RootReport> roots;
};

/// Closed form vs quadrature for every term on hs, then the root count of the
/// leading nonvanishing Melnikov function against its bound, then (optionally)
/// simulated limit cycles against the predicted zeros.
VerifyReport verify_system(const LienardSystem& sys, const VerifyOptions& opts = {});

std::string verify_csv_header();
std::string to_csv(const VerifyRow& row);

}  // namespace lienard

#include "lienard/verify.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lienard/errors.hpp"
#include "lienard/oracle.hpp"
#include "lienard/simulator.hpp"

namespace lienard {

namespace {

void oracle_rows(const LienardSystem& sys, const IntegralTerms& terms, const MelnikovExpansion& expansion,
                 const VerifyOptions& opts, std::vector<VerifyRow>& rows) {
  const QuadratureOptions q{opts.tol.quad_abs, opts.tol.quad_rel, 2000};
  auto push = [&](std::string term, double h, double oracle, double closed) {
    VerifyRow r{"oracle", std::move(term), h, oracle, closed, 0.0, opts.tol.oracle_rel, false};
    r.error = std::abs(oracle - closed) / (1.0 + std::abs(closed));
    r.pass = r.error <= r.threshold;
    rows.push_back(std::move(r));
  };
  for (double h : opts.hs) {
    std::vector<double> values;
    for (int i = 0; i < terms.count(); ++i) {
      values.push_back(quad_I(sys, h, i, q).value);
      const auto& cf = terms.I[static_cast<std::size_t>(i)];
      if (cf) push("I" + std::to_string(i), h, values.back(), hp_eval(*cf, h));
    }
    push("M0", h, values[0], hp_eval(expansion.M0, h));
    if (expansion.M1) {
      double m1 = 0.0;
      for (std::size_t i = 1; i < values.size(); ++i) m1 += values[i];
      push("M1", h, m1, hp_eval(*expansion.M1, h));
    }
  }
}

}  // namespace

VerifyReport verify_system(const LienardSystem& sys, const VerifyOptions& opts) {
  sys.validate();
  VerifyReport report;
  const IntegralTerms terms = opts.closed_form_override ? *opts.closed_form_override : closed_form_terms(sys);
  MelnikovExpansion expansion = assemble(sys);
  if (opts.closed_form_override) {
    expansion.M0 = terms.I[0].value_or(HalfPowerPoly{});
    if (expansion.M1) {
      HalfPowerPoly m1;
      for (int i = 1; i < terms.count(); ++i) m1 = m1 + terms.I[static_cast<std::size_t>(i)].value_or(HalfPowerPoly{});
      expansion.M1 = m1;
    }
  }
  oracle_rows(sys, terms, expansion, opts, report.rows);

  // leading nonvanishing Melnikov function
  const bool first_order = !expansion.M0.is_zero();
  const HalfPowerPoly* lead = first_order ? &expansion.M0 : (expansion.M1 ? &*expansion.M1 : nullptr);
  if (lead && !lead->is_zero()) {
    RootOptions ro;
    ro.width = opts.tol.root_width;
    report.roots = isolate_positive_roots(*lead, ro);
    report.roots->theorem_bound = zero_bound(sys.kase, sys.m, sys.n, first_order ? Which::M0 : Which::M1);
    const BoundCheck bc = check_against_bound(*report.roots, *report.roots->theorem_bound);
    report.rows.push_back({"roots", first_order ? "M0" : "M1", 0.0, static_cast<double>(bc.count),
                           static_cast<double>(bc.bound), static_cast<double>(-bc.slack), 0.0, bc.ok});

    if (opts.simulate) {
      SimConfig config = SimConfig::from_system(sys);
      config.rk_tol = opts.tol.rk_tol;
      config.event_tol = opts.tol.event_tol;
      const PlanarField field = PlanarField::from_system(sys, sys.lambda, sys.eps);
      std::vector<double> predicted;
      for (const auto& r : report.roots->roots)
        if (r.certificate != Certificate::SuspectedEvenMultiplicity) predicted.push_back(r.h_mid);
      if (!predicted.empty()) {
        const double r_lo = 0.5 * std::sqrt(2 * predicted.front());
        const double r_hi = 1.25 * std::sqrt(2 * predicted.back());
        CycleScan scan;
        try {
          scan = find_cycles(field, r_lo, r_hi, opts.sim_grid, config, opts.exec);
        } catch (const Error& e) {
          report.rows.push_back({"simulate", std::string(to_string(e.kind())), 0.0, 0.0, 0.0, 0.0, 0.0, false});
        }
        report.rows.push_back({"simulate", "cycle_count", 0.0, static_cast<double>(scan.cycles.size()),
                               static_cast<double>(predicted.size()), 0.0, 0.0,
                               scan.cycles.size() == predicted.size()});
        for (std::size_t i = 0; i < predicted.size(); ++i) {
          // nearest simulated cycle to each predicted zero
          double best = std::numeric_limits<double>::infinity();
          double h_star = 0.0;
          for (const auto& c : scan.cycles) {
            const double err = std::abs(c.h_star - predicted[i]) / predicted[i];
            if (err < best) {
              best = err;
              h_star = c.h_star;
            }
          }
          report.rows.push_back({"simulate", "h*", predicted[i], h_star, predicted[i], best, opts.tol.cycle_rel,
                                 best <= opts.tol.cycle_rel});
        }
      }
    }
  }

  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    if (!report.rows[i].pass) {
      report.pass = false;
      report.first_failure = i;
      report.first_failing_term = report.rows[i].term;
      break;
    }
  }
  return report;
}

std::string verify_csv_header() { return "stage,term,h,value,reference,error,threshold,pass"; }

std::string to_csv(const VerifyRow& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.stage << ',' << r.term << ',' << r.h << ',' << r.value << ',' << r.reference << ',' << r.error << ','
     << r.threshold << ',' << (r.pass ? "pass" : "fail");
  return os.str();
}

}  // namespace lienard

#include "lienard/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lienard/half_power_poly.hpp"
#include "lienard/melnikov.hpp"

namespace lienard {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

struct NumericSystem {
  std::vector<double> f0, f1, g0, g1, g;

  explicit NumericSystem(const LienardSystem& sys)
      : f0(to_doubles(sys.a0)), f1(to_doubles(sys.a1)), g0(to_doubles(sys.b0)), g1(to_doubles(sys.b1)),
        g(to_doubles(sys.c)) {}
};

OracleValue operator+(OracleValue a, OracleValue b) { return {a.value + b.value, a.error + b.error}; }

OracleValue from(const QuadratureResult& q) { return {q.value, q.error}; }

void require_positive(double h) {
  if (!(h > 0)) throw Error(ErrorKind::NegativeEnergy, "oracle needs h > 0, got " + std::to_string(h));
}

// Switching on y: all integrands are functions of the swapped coordinates where
// the perturbation reads x f(y) +- g(y).
OracleValue case_y_term(const NumericSystem& ns, double h, int index, const QuadratureOptions& opts) {
  const ArcSpec ab{h, ArcHalf::RightHalf};
  const ArcSpec ba{h, ArcHalf::LeftHalf};
  const double r = std::sqrt(2 * h);
  switch (index) {
    case 0:
    case 1: {
      const auto& f = index == 0 ? ns.f0 : ns.f1;
      const auto& gi = index == 0 ? ns.g0 : ns.g1;
      auto plus = [&](double x, double y) { return -(x * poly_eval(f, y) + poly_eval(gi, y)); };
      auto minus = [&](double x, double y) { return -(x * poly_eval(f, y) - poly_eval(gi, y)); };
      return from(arc_integral(ab, Differential::Dy, plus, opts)) +
             from(arc_integral(ba, Differential::Dy, minus, opts));
    }
    case 2: {
      auto w = [&](double, double y) { return antiderivative_eval(ns.g, y) * poly_eval(ns.f0, y); };
      auto neg_w = [&](double x, double y) { return -w(x, y); };
      return from(arc_integral(ab, Differential::Dt, neg_w, opts)) + from(arc_integral(ba, Differential::Dt, w, opts));
    }
    case 3: {
      // L(x f0(y) + g0(y)) - L(x f0(y) - g0(y)) with L(p) = p(0,a) a_lambda - p(0,b) b_lambda
      const EndpointDerivatives d = endpoint_derivatives(ns.g, h);
      auto p_plus = [&](double y) { return 0.0 * poly_eval(ns.f0, y) + poly_eval(ns.g0, y); };
      auto p_minus = [&](double y) { return 0.0 * poly_eval(ns.f0, y) - poly_eval(ns.g0, y); };
      const double l_plus = p_plus(r) * d.da_dlambda - p_plus(-r) * d.db_dlambda;
      const double l_minus = p_minus(r) * d.da_dlambda - p_minus(-r) * d.db_dlambda;
      return {l_plus - l_minus, 0.0};
    }
    case 4: {
      auto p = [&](double x, double y) { return -(x * poly_eval(ns.f0, y) - poly_eval(ns.g0, y)); };
      OracleValue arc = from(arc_integral(ab, Differential::Dy, p, opts));
      const double factor = i4_factor(ns.g, h);
      return {factor * arc.value, std::abs(factor) * arc.error};
    }
    default:
      throw Error(ErrorKind::InvalidInput, "SwitchY has integral terms I0..I4, got I" + std::to_string(index));
  }
}

OracleValue case_x_term(const NumericSystem& ns, double h, int index, const QuadratureOptions& opts) {
  const ArcSpec ab{h, ArcHalf::RightHalf};
  const ArcSpec ba{h, ArcHalf::LeftHalf};
  switch (index) {
    case 0:
    case 1: {
      const auto& f = index == 0 ? ns.f0 : ns.f1;
      const auto& gi = index == 0 ? ns.g0 : ns.g1;
      auto plus = [&](double x, double y) { return -(y * poly_eval(f, x) + poly_eval(gi, x)); };
      auto minus = [&](double x, double y) { return -(y * poly_eval(f, x) - poly_eval(gi, x)); };
      return from(arc_integral(ab, Differential::Dx, plus, opts)) +
             from(arc_integral(ba, Differential::Dx, minus, opts));
    }
    case 2: {
      auto w = [&](double x, double) { return antiderivative_eval(ns.g, x) * poly_eval(ns.f0, x); };
      auto neg_w = [&](double x, double y) { return -w(x, y); };
      return from(arc_integral(ab, Differential::Dt, w, opts)) + from(arc_integral(ba, Differential::Dt, neg_w, opts));
    }
    case 3: {
      auto p = [&](double x, double y) { return -(y * poly_eval(ns.f0, x) - poly_eval(ns.g0, x)); };
      return from(arc_integral(ab, Differential::Dx, p, opts));
    }
    default:
      throw Error(ErrorKind::InvalidInput, "SwitchX has integral terms I0..I3, got I" + std::to_string(index));
  }
}

double solve_section_level(const std::vector<double>& g, double lambda, double h) {
  // y^2/2 + lambda G(y) = h, root near sqrt(2h)
  double y = std::sqrt(2 * h);
  for (int it = 0; it < 100; ++it) {
    const double phi = 0.5 * y * y + lambda * antiderivative_eval(g, y) - h;
    const double dphi = y + lambda * poly_eval(g, y);
    const double step = phi / dphi;
    y -= step;
    if (std::abs(step) <= 1e-16 * std::abs(y)) break;
  }
  if (!(y > 0) || !std::isfinite(y))
    throw Error(ErrorKind::NoConvergence, "no positive section point on the level h = " + std::to_string(h));
  return y;
}

}  // namespace

QuadratureResult arc_integral(const ArcSpec& arc, Differential d, const std::function<double(double, double)>& F,
                              const QuadratureOptions& opts) {
  require_positive(arc.h);
  const double r = std::sqrt(2 * arc.h);
  // Right half: (r cos t, r sin t) with t running from pi/2 down to -pi/2.
  // Left half:  (-r cos t, r sin t) with t running from -pi/2 up to pi/2.
  const bool right = arc.half == ArcHalf::RightHalf;
  std::function<double(double)> integrand;
  switch (d) {
    case Differential::Dx:
      // right: dx = -r sin t dt over a decreasing t; left: dx = r sin t dt
      integrand = [&, r, right](double t) {
        const double x = right ? r * std::cos(t) : -r * std::cos(t);
        return F(x, r * std::sin(t)) * r * std::sin(t);
      };
      break;
    case Differential::Dy:
      integrand = [&, r, right](double t) {
        const double x = right ? r * std::cos(t) : -r * std::cos(t);
        const double w = r * std::cos(t);
        return right ? -F(x, r * std::sin(t)) * w : F(x, r * std::sin(t)) * w;
      };
      break;
    case Differential::Dt:
      // the unperturbed flow turns with unit angular speed
      integrand = [&, r, right](double t) {
        const double x = right ? r * std::cos(t) : -r * std::cos(t);
        return F(x, r * std::sin(t));
      };
      break;
  }
  return integrate_gk15(integrand, -kHalfPi, kHalfPi, opts);
}

double antiderivative_eval(const std::vector<double>& g, double y) {
  double acc = 0.0;
  for (std::size_t j = g.size(); j-- > 0;) acc = acc * y + g[j] / static_cast<double>(j + 1);
  return acc * y;
}

EndpointDerivatives endpoint_derivatives(const std::vector<double>& g, double h) {
  require_positive(h);
  const double r = std::sqrt(2 * h);
  return {-antiderivative_eval(g, r) / r, antiderivative_eval(g, -r) / r};
}

double i4_factor(const std::vector<double>& g, double h) {
  require_positive(h);
  const double r = std::sqrt(2 * h);
  return 2 * poly_eval(g, r) / r;
}

OracleValue quad_I(const LienardSystem& sys, double h, int index, const QuadratureOptions& opts) {
  require_positive(h);
  sys.validate();
  const NumericSystem ns(sys);
  return sys.kase == SwitchCase::SwitchY ? case_y_term(ns, h, index, opts) : case_x_term(ns, h, index, opts);
}

double oracle_m0(const LienardSystem& sys, double h, const QuadratureOptions& opts) {
  return quad_I(sys, h, 0, opts).value;
}

double oracle_m1(const LienardSystem& sys, double h, const QuadratureOptions& opts) {
  const int last = sys.kase == SwitchCase::SwitchY ? 4 : 3;
  double sum = 0.0;
  for (int i = 1; i <= last; ++i) sum += quad_I(sys, h, i, opts).value;
  return sum;
}

double fd_bifurcation_estimate(const LienardSystem& sys, double h, double lambda, double eps, SimConfig config) {
  require_positive(h);
  if (!(eps > 0)) throw Error(ErrorKind::InvalidInput, "fd_bifurcation_estimate needs eps > 0");
  config.lambda = lambda;
  config.eps = eps;
  const PlanarField field = PlanarField::from_system(sys, lambda, eps);
  const auto g = to_doubles(sys.c);
  if (sys.kase == SwitchCase::SwitchY) {
    // the upper half plane of the original system is the + side of the swapped one
    const double a = solve_section_level(g, lambda, h);
    const double h_start = 0.5 * a * a + lambda * antiderivative_eval(g, a);
    const ReturnResult ret = advance_to_section(field, a, config, TimeDirection::Backward);
    const double h_end = 0.5 * ret.coord * ret.coord + lambda * antiderivative_eval(g, ret.coord);
    return (h_end - h_start) / eps;
  }
  const double a = std::sqrt(2 * h);
  const ReturnResult ret = advance_to_section(field, a, config, TimeDirection::Forward);
  return (0.5 * ret.coord * ret.coord - 0.5 * a * a) / eps;
}

std::string oracle_csv_header() { return "case,h,index,oracle_value,closedform_value,abs_err,rel_err"; }

std::string to_csv(const OracleRow& row) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(row.kase) << ',' << row.h << ',' << row.term << ',' << row.oracle_value << ','
     << row.closedform_value << ',' << row.abs_err << ',' << row.rel_err;
  return os.str();
}

std::vector<OracleRow> oracle_sweep(const std::vector<LienardSystem>& systems, const std::vector<double>& hs,
                                    Execution exec, const QuadratureOptions& opts) {
  const std::size_t pairs = systems.size() * hs.size();
  std::vector<std::vector<OracleRow>> slots(pairs);
  std::vector<IntegralTerms> terms(systems.size());
  std::vector<MelnikovExpansion> expansions(systems.size());
  for (std::size_t s = 0; s < systems.size(); ++s) {
    terms[s] = closed_form_terms(systems[s]);
    expansions[s] = assemble(systems[s]);
  }

  auto kernel = [&](std::size_t p) {
    const std::size_t s = p / hs.size();
    const double h = hs[p % hs.size()];
    const LienardSystem& sys = systems[s];
    std::vector<OracleRow>& rows = slots[p];
    auto push = [&](std::string name, double oracle, double closed) {
      OracleRow row{s, sys.kase, h, std::move(name), oracle, closed, std::abs(oracle - closed), 0.0};
      row.rel_err = row.abs_err / (1.0 + std::abs(closed));
      rows.push_back(std::move(row));
    };
    std::vector<double> values(static_cast<std::size_t>(terms[s].count()));
    for (int i = 0; i < terms[s].count(); ++i) {
      values[static_cast<std::size_t>(i)] = quad_I(sys, h, i, opts).value;
      const auto& cf = terms[s].I[static_cast<std::size_t>(i)];
      if (cf) push("I" + std::to_string(i), values[static_cast<std::size_t>(i)], hp_eval(*cf, h));
    }
    push("M0", values[0], hp_eval(expansions[s].M0, h));
    if (expansions[s].M1) {
      double m1 = 0.0;
      for (std::size_t i = 1; i < values.size(); ++i) m1 += values[i];
      push("M1", m1, hp_eval(*expansions[s].M1, h));
    }
  };

  const auto count = static_cast<long>(pairs);
  if (exec == Execution::Parallel) {
    std::vector<std::string> failures(pairs);
#pragma omp parallel for schedule(dynamic)
    for (long p = 0; p < count; ++p) {
      try {
        kernel(static_cast<std::size_t>(p));
      } catch (const std::exception& e) {
        failures[static_cast<std::size_t>(p)] = e.what();
      }
    }
    for (const auto& f : failures)
      if (!f.empty()) throw Error(ErrorKind::QuadratureFailure, f);
  } else {
    for (long p = 0; p < count; ++p) kernel(static_cast<std::size_t>(p));
  }

  std::vector<OracleRow> out;
  for (auto& v : slots)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

}  // namespace lienard

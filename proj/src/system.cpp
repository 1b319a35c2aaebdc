#include "lienard/system.hpp"

#include <cmath>

#include "lienard/errors.hpp"

namespace lienard {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeEnergy: return "NegativeEnergy";
    case ErrorKind::WrongCase: return "WrongCase";
    case ErrorKind::OddnessViolated: return "OddnessViolated";
    case ErrorKind::ZeroLambda: return "ZeroLambda";
    case ErrorKind::TooManyTargets: return "TooManyTargets";
    case ErrorKind::InfeasibleShape: return "InfeasibleShape";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::EscapeAnnulus: return "EscapeAnnulus";
    case ErrorKind::MaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorKind::TransversalityLost: return "TransversalityLost";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeEnergy:
    case ErrorKind::WrongCase:
    case ErrorKind::OddnessViolated:
    case ErrorKind::ZeroLambda:
    case ErrorKind::TooManyTargets:
    case ErrorKind::InfeasibleShape:
    case ErrorKind::ZeroPolynomial:
    case ErrorKind::InvalidInput:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(SwitchCase c) { return c == SwitchCase::SwitchY ? "Y" : "X"; }

SwitchCase parse_switch_case(std::string_view s) {
  if (s == "Y" || s == "y" || s == "SwitchY") return SwitchCase::SwitchY;
  if (s == "X" || s == "x" || s == "SwitchX") return SwitchCase::SwitchX;
  throw Error(ErrorKind::InvalidInput, "unknown switching case '" + std::string(s) + "' (expected Y or X)");
}

LienardSystem LienardSystem::zero(SwitchCase kase, int m, int n) {
  if (m < 0 || n < 0) throw Error(ErrorKind::InvalidInput, "degrees must be non-negative");
  LienardSystem s;
  s.kase = kase;
  s.m = m;
  s.n = n;
  auto mm = static_cast<std::size_t>(m) + 1;
  auto nn = static_cast<std::size_t>(n) + 1;
  s.a0.assign(mm, RingElem{});
  s.a1.assign(mm, RingElem{});
  s.b0.assign(nn, RingElem{});
  s.b1.assign(nn, RingElem{});
  s.c.assign(nn, RingElem{});
  return s;
}

void LienardSystem::validate() const {
  if (m < 0 || n < 0) throw Error(ErrorKind::InvalidInput, "degrees must be non-negative");
  auto mm = static_cast<std::size_t>(m) + 1;
  auto nn = static_cast<std::size_t>(n) + 1;
  auto check = [](const std::vector<RingElem>& v, std::size_t want, const char* name) {
    if (v.size() != want)
      throw Error(ErrorKind::InvalidInput, std::string(name) + " has " + std::to_string(v.size()) +
                                               " coefficients, expected " + std::to_string(want));
  };
  check(a0, mm, "a0");
  check(a1, mm, "a1");
  check(b0, nn, "b0");
  check(b1, nn, "b1");
  check(c, nn, "c");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error(ErrorKind::InvalidInput, "lambda must be >= 0");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw Error(ErrorKind::InvalidInput, "eps must be >= 0");
}

bool is_odd(const std::vector<RingElem>& coeffs) {
  for (std::size_t j = 0; j < coeffs.size(); j += 2)
    if (!coeffs[j].is_zero()) return false;
  return true;
}

LienardSystem project_odd(const LienardSystem& sys) {
  LienardSystem r = sys;
  for (std::size_t j = 0; j < r.a0.size(); j += 2) r.a0[j] = RingElem{};
  if (r.kase == SwitchCase::SwitchY)
    for (std::size_t j = 0; j < r.b0.size(); j += 2) r.b0[j] = RingElem{};
  return r;
}

std::vector<double> to_doubles(const std::vector<RingElem>& coeffs) {
  std::vector<double> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(c.to_double());
  return out;
}

TheoremForm fold_to_theorem_form(const LienardSystem& sys) {
  sys.validate();
  if (sys.lambda == 0.0) throw Error(ErrorKind::ZeroLambda, "folding needs lambda > 0");
  TheoremForm t;
  t.kase = sys.kase;
  t.lambda = sys.lambda;
  t.delta = sys.eps / sys.lambda;
  auto f0 = to_doubles(sys.a0), f1 = to_doubles(sys.a1);
  auto g0 = to_doubles(sys.b0), g1 = to_doubles(sys.b1), g = to_doubles(sys.c);
  t.fbar.resize(f0.size());
  for (std::size_t j = 0; j < f0.size(); ++j) t.fbar[j] = t.delta * (f0[j] + sys.lambda * f1[j]);
  t.gbar.resize(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) t.gbar[j] = g[j] + t.delta * (g0[j] + sys.lambda * g1[j]);
  return t;
}

}  // namespace lienard

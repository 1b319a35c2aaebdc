#include "lienard/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lienard/half_power_poly.hpp"

namespace lienard {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

constexpr double kMaxStep = 0.25;

struct StepResult {
  State z;
  State err;
};

class Integrator {
 public:
  Integrator(const PlanarField& field, double dir_sign) : field_(field), dir_(dir_sign) {}

  State rhs(const State& z, int side) const {
    State v = vector_field(field_, z, side);
    return {dir_ * v[0], dir_ * v[1]};
  }

  StepResult step(const State& z, double dt, int side) const {
    auto axpy = [&](std::initializer_list<std::pair<double, const State*>> terms) {
      State r = z;
      for (const auto& [c, k] : terms) {
        r[0] += dt * c * (*k)[0];
        r[1] += dt * c * (*k)[1];
      }
      return r;
    };
    const State k1 = rhs(z, side);
    const State k2 = rhs(axpy({{A21, &k1}}), side);
    const State k3 = rhs(axpy({{A31, &k1}, {A32, &k2}}), side);
    const State k4 = rhs(axpy({{A41, &k1}, {A42, &k2}, {A43, &k3}}), side);
    const State k5 = rhs(axpy({{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}), side);
    const State k6 = rhs(axpy({{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}}), side);
    const State zn = axpy({{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}});
    const State k7 = rhs(zn, side);
    State err;
    for (int i = 0; i < 2; ++i) {
      auto u = static_cast<std::size_t>(i);
      err[u] = dt * (E1 * k1[u] + E3 * k3[u] + E4 * k4[u] + E5 * k5[u] + E6 * k6[u] + E7 * k7[u]);
    }
    return {zn, err};
  }

 private:
  const PlanarField& field_;
  double dir_;
};

// Absolute local error per component, relative to the tolerance.
double err_norm(const StepResult& r, double tol) { return std::max(std::abs(r.err[0]), std::abs(r.err[1])) / tol; }

// coordinate along the section (the non-switching axis)
double along_section(SwitchCase kase, const State& z) { return kase == SwitchCase::SwitchY ? z[0] : z[1]; }

}  // namespace

SimConfig SimConfig::from_system(const LienardSystem& sys) {
  SimConfig c;
  c.lambda = sys.lambda;
  c.eps = sys.eps;
  return c;
}

void SimConfig::validate() const {
  if (!(lambda >= 0) || !(eps >= 0)) throw Error(ErrorKind::InvalidInput, "lambda and eps must be >= 0");
  if (!(r_min < r_max)) throw Error(ErrorKind::InvalidInput, "annulus needs r_min < r_max");
  if (!(rk_tol > 0) || !(event_tol > 0)) throw Error(ErrorKind::InvalidInput, "tolerances must be positive");
  if (max_steps <= 0) throw Error(ErrorKind::InvalidInput, "max_steps must be positive");
}

PlanarField PlanarField::from_system(const LienardSystem& sys, double lambda, double eps) {
  sys.validate();
  PlanarField f;
  f.kase = sys.kase;
  auto f0 = to_doubles(sys.a0), f1 = to_doubles(sys.a1);
  auto g0 = to_doubles(sys.b0), g1 = to_doubles(sys.b1), g = to_doubles(sys.c);
  f.damping.resize(f0.size());
  for (std::size_t j = 0; j < f0.size(); ++j) f.damping[j] = eps * (f0[j] + lambda * f1[j]);
  f.switched.resize(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) f.switched[j] = lambda * g[j] + eps * (g0[j] + lambda * g1[j]);
  return f;
}

PlanarField PlanarField::from_theorem(const TheoremForm& t) {
  PlanarField f;
  f.kase = t.kase;
  f.damping.resize(t.fbar.size());
  for (std::size_t j = 0; j < t.fbar.size(); ++j) f.damping[j] = t.lambda * t.fbar[j];
  f.switched.resize(t.gbar.size());
  for (std::size_t j = 0; j < t.gbar.size(); ++j) f.switched[j] = t.lambda * t.gbar[j];
  return f;
}

State vector_field(const PlanarField& field, const State& s, int side) {
  const double x = s[0], y = s[1];
  return {y, -x - y * poly_eval(field.damping, x) - side * poly_eval(field.switched, x)};
}

State vector_field(const LienardSystem& sys, const State& s, int side, double lambda, double eps) {
  return vector_field(PlanarField::from_system(sys, lambda, eps), s, side);
}

State section_point(SwitchCase kase, double r) {
  return kase == SwitchCase::SwitchY ? State{r, 0.0} : State{0.0, r};
}

ReturnResult advance_to_section(const PlanarField& field, double start_coord, const SimConfig& config,
                                TimeDirection dir, std::vector<TrajectorySample>* trajectory) {
  config.validate();
  if (!(start_coord > config.r_min && start_coord < config.r_max))
    throw Error(ErrorKind::EscapeAnnulus, "start coordinate outside the annulus");

  const int sc = field.switch_index();
  const Integrator integ(field, dir == TimeDirection::Forward ? 1.0 : -1.0);

  State z = section_point(field.kase, start_coord);

  // Pick the half-plane the orbit enters; both one-sided fields must agree.
  auto normal = [&](const State& p, int side) { return integ.rhs(p, side)[static_cast<std::size_t>(sc)]; };
  int side = 0;
  for (int s : {+1, -1}) {
    const double vn = normal(z, s);
    if (vn * s >= config.min_normal_speed) side = s;
  }
  if (side == 0) throw Error(ErrorKind::TransversalityLost, "flow is not transversal to the section at the start");
  const int start_side = side;

  ReturnResult res;
  double t = 0.0;
  double dt = 0.01;
  if (trajectory) trajectory->push_back({t, z, side});

  while (true) {
    if (res.steps >= config.max_steps)
      throw Error(ErrorKind::MaxStepsExceeded, "no return after " + std::to_string(res.steps) + " steps");
    ++res.steps;
    dt = std::min(dt, kMaxStep);
    StepResult trial = integ.step(z, dt, side);
    const double en = err_norm(trial, config.rk_tol);
    if (!(en <= 1.0)) {
      const double fac = std::isfinite(en) ? std::max(0.2, 0.9 * std::pow(en, -0.2)) : 0.2;
      dt *= fac;
      if (dt < 1e-14) throw Error(ErrorKind::MaxStepsExceeded, "step size underflow");
      continue;
    }

    const double next_dt = dt * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(en, 1e-10), -0.2)));

    if (trial.z[static_cast<std::size_t>(sc)] * side > 0.0) {
      z = trial.z;
      t += dt;
      dt = next_dt;
    } else {
      // The step crossed the switching line: bisect the step length.
      double lo = 0.0, hi = dt;
      State zc = trial.z;
      for (int it = 0; it < 200; ++it) {
        if (std::abs(zc[static_cast<std::size_t>(sc)]) <= config.event_tol) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const State zm = integ.step(z, mid, side).z;
        if (zm[static_cast<std::size_t>(sc)] * side > 0.0) {
          lo = mid;
        } else {
          hi = mid;
          zc = zm;
        }
      }
      t += hi;
      Crossing cr{t, zc, side, -side};
      zc[static_cast<std::size_t>(sc)] = 0.0;
      const double vn = normal(zc, -side);
      if (vn * (-side) < config.min_normal_speed) {
        std::ostringstream os;
        os << "normal velocity " << vn << " at crossing (" << zc[0] << ", " << zc[1] << ")";
        throw Error(ErrorKind::TransversalityLost, os.str());
      }
      side = -side;
      z = zc;
      res.crossings.push_back(cr);
      if (trajectory) trajectory->push_back({t, z, side});
      if (along_section(field.kase, z) > 0.0 && side == start_side) {
        res.coord = along_section(field.kase, z);
        res.point = z;
        res.time = t;
        return res;
      }
      dt = std::min(next_dt, 0.01);
    }

    const double r = std::hypot(z[0], z[1]);
    if (!(r > config.r_min && r < config.r_max)) {
      std::ostringstream os;
      os << "radius " << r << " left [" << config.r_min << ", " << config.r_max << "]";
      throw Error(ErrorKind::EscapeAnnulus, os.str());
    }
    if (trajectory) trajectory->push_back({t, z, side});
  }
}

double displacement(const PlanarField& field, double r, const SimConfig& config) {
  return advance_to_section(field, r, config).coord - r;
}

std::vector<DisplacementSample> scan_displacement(const PlanarField& field, const std::vector<double>& radii,
                                                  const SimConfig& config, Execution exec) {
  std::vector<DisplacementSample> out(radii.size());
  auto kernel = [&](std::size_t i) {
    DisplacementSample s;
    s.r = radii[i];
    try {
      s.d = displacement(field, radii[i], config);
      s.ok = true;
    } catch (const Error& e) {
      s.failure = e.kind();
    }
    out[i] = s;
  };
  const auto count = static_cast<long>(radii.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) kernel(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < count; ++i) kernel(static_cast<std::size_t>(i));
  }
  return out;
}

CycleScan find_cycles(const PlanarField& field, double r_lo, double r_hi, int grid_n, const SimConfig& config,
                      Execution exec) {
  if (grid_n < 2 || !(r_lo < r_hi)) throw Error(ErrorKind::InvalidInput, "find_cycles needs grid_n >= 2 and r_lo < r_hi");
  std::vector<double> radii(static_cast<std::size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i) radii[static_cast<std::size_t>(i)] = r_lo + (r_hi - r_lo) * i / (grid_n - 1);

  CycleScan scan;
  scan.samples = scan_displacement(field, radii, config, exec);

  bool all_flat = true;
  bool any_ok = false;
  for (const auto& s : scan.samples) {
    if (!s.ok) continue;
    any_ok = true;
    if (std::abs(s.d) > config.degenerate_tol * std::max(1.0, s.r)) all_flat = false;
  }
  if (any_ok && all_flat) {
    scan.non_isolated = true;
    return scan;
  }

  struct Bracket {
    double lo, hi, dlo, dhi;
  };
  std::vector<Bracket> brackets;
  for (std::size_t i = 0; i + 1 < scan.samples.size(); ++i) {
    const auto& a = scan.samples[i];
    const auto& b = scan.samples[i + 1];
    if (!a.ok || !b.ok) continue;
    if (a.d == 0.0 || a.d * b.d < 0.0) brackets.push_back({a.r, b.r, a.d, b.d});
  }

  std::vector<std::optional<CycleReport>> found(brackets.size());
  auto refine = [&](std::size_t k) {
    Bracket br = brackets[k];
    const double secant = (br.dhi - br.dlo) / (br.hi - br.lo);
    double r = br.lo, d = br.dlo;
    try {
      for (int it = 0; it < 200 && std::abs(d) > 1e-9 * r; ++it) {
        r = 0.5 * (br.lo + br.hi);
        if (r <= br.lo || r >= br.hi) break;
        d = displacement(field, r, config);
        if ((d < 0) == (br.dlo < 0)) {
          br.lo = r;
          br.dlo = d;
        } else {
          br.hi = r;
          br.dhi = d;
        }
      }
      const ReturnResult ret = advance_to_section(field, r, config);
      CycleReport rep;
      rep.section_coord = r;
      rep.radius = r;
      rep.h_star = 0.5 * r * r;
      rep.residual = std::abs(ret.coord - r);
      rep.stability_slope = secant;
      rep.stable = secant < 0.0;
      rep.side_sequence.push_back(ret.crossings.empty() ? 0 : ret.crossings.front().side_before);
      for (const auto& c : ret.crossings) rep.side_sequence.push_back(c.side_after);
      found[k] = rep;
    } catch (const Error&) {
      // a bracket whose refinement leaves the annulus is not a cycle
    }
  };
  const auto nb = static_cast<long>(brackets.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < nb; ++k) refine(static_cast<std::size_t>(k));
  } else {
    for (long k = 0; k < nb; ++k) refine(static_cast<std::size_t>(k));
  }
  for (auto& f : found)
    if (f) scan.cycles.push_back(std::move(*f));
  return scan;
}

}  // namespace lienard

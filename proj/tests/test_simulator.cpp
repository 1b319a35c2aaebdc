#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lienard/errors.hpp"
#include "lienard/melnikov.hpp"
#include "lienard/presets.hpp"
#include "lienard/simulator.hpp"
#include "support/random_systems.hpp"

using namespace lienard;

namespace {

// x' = y, y' = -x - eps (x^2 - 1) y: stable cycle near h = 2
LienardSystem van_der_pol(SwitchCase kase) {
  LienardSystem sys = LienardSystem::zero(kase, 2, 0);
  sys.a0[0] = -1;
  sys.a0[2] = 1;
  return sys;
}

}  // namespace

TEST_CASE("vector field") {
  const LienardSystem zero = LienardSystem::zero(SwitchCase::SwitchY, 2, 2);
  const State v = vector_field(zero, {0.3, -0.7}, 1, 0.0, 0.0);
  CHECK(v[0] == -0.7);
  CHECK(v[1] == -0.3);

  LienardSystem g = LienardSystem::zero(SwitchCase::SwitchY, 0, 1);
  g.c[1] = 1;
  CHECK(vector_field(g, {1.0, 0.5}, 1, 0.1, 0.0)[1] == doctest::Approx(-1.1));
  CHECK(vector_field(g, {1.0, -0.5}, -1, 0.1, 0.0)[1] == doctest::Approx(-0.9));

  // switching on x: at x = 0 only the switched part can jump
  LienardSystem x = LienardSystem::zero(SwitchCase::SwitchX, 1, 1);
  x.a0[1] = 2;
  x.c[1] = 3;
  CHECK(vector_field(x, {0.0, 1.0}, 1, 0.1, 0.1) == vector_field(x, {0.0, 1.0}, -1, 0.1, 0.1));
}

TEST_CASE("folded form has the same right-hand side") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (SwitchCase k : {SwitchCase::SwitchY, SwitchCase::SwitchX}) {
    for (int it = 0; it < 10; ++it) {
      LienardSystem sys = testing::random_system(rng, k, {});
      sys.lambda = 0.1;
      sys.eps = 0.01;
      const PlanarField direct = PlanarField::from_system(sys, sys.lambda, sys.eps);
      const PlanarField folded = PlanarField::from_theorem(fold_to_theorem_form(sys));
      for (int p = 0; p < 100; ++p) {
        const State s{u(rng), u(rng)};
        for (int side : {1, -1}) {
          const State a = vector_field(direct, s, side), b = vector_field(folded, s, side);
          CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-14).scale(1.0));
        }
      }
    }
  }
  LienardSystem sys = load_preset("example1");
  sys.lambda = 0.1;
  sys.eps = 0.01;
  const TheoremForm t = fold_to_theorem_form(sys);
  CHECK(t.delta == doctest::Approx(0.1));
  CHECK(t.fbar[3] == doctest::Approx(0.1));
  CHECK(t.fbar[2] == doctest::Approx(-10 * 0.01 / std::numbers::pi));
  CHECK(t.fbar[0] == doctest::Approx(-25 * 0.01 / std::numbers::pi));
  sys.eps = 0.0;
  const TheoremForm bare = fold_to_theorem_form(sys);
  for (double v : bare.fbar) CHECK(v == 0.0);
  CHECK(bare.gbar == to_doubles(sys.c));
  sys.lambda = 0.0;
  CHECK_THROWS_AS(fold_to_theorem_form(sys), Error);
}

TEST_CASE("unperturbed rotation returns to its start") {
  for (SwitchCase k : {SwitchCase::SwitchY, SwitchCase::SwitchX}) {
    const PlanarField field = PlanarField::from_system(LienardSystem::zero(k, 1, 1), 0.0, 0.0);
    SimConfig config;
    for (double r : {0.5, 1.5, 4.0}) {
      const ReturnResult ret = advance_to_section(field, r, config);
      CHECK(ret.coord == doctest::Approx(r).epsilon(1e-9));
      CHECK(std::abs(0.5 * ret.coord * ret.coord - 0.5 * r * r) <= 1e-9);
      CHECK(ret.time == doctest::Approx(2 * std::numbers::pi).epsilon(1e-8));
    }
    const CycleScan scan = find_cycles(field, 0.5, 3.0, 20, config, Execution::Serial);
    CHECK(scan.non_isolated);
    CHECK(scan.cycles.empty());
  }
}

TEST_CASE("crossings lie on the switching line and alternate") {
  LienardSystem sys = load_preset("example1");
  const PlanarField field = PlanarField::from_system(sys, 0.05, 0.0025);
  SimConfig config;
  std::vector<TrajectorySample> traj;
  const ReturnResult ret = advance_to_section(field, 2.0, config, TimeDirection::Forward, &traj);
  REQUIRE(ret.crossings.size() >= 2);
  for (std::size_t i = 0; i < ret.crossings.size(); ++i) {
    const auto& c = ret.crossings[i];
    CHECK(std::abs(c.point[1]) <= config.event_tol);
    CHECK(c.side_after == -c.side_before);
    if (i > 0) CHECK(c.side_before == ret.crossings[i - 1].side_after);
  }
  CHECK(traj.front().point[0] == 2.0);
  CHECK(traj.back().point[1] == 0.0);
  for (std::size_t i = 1; i < traj.size(); ++i) CHECK(traj[i].t >= traj[i - 1].t);
}

TEST_CASE("smooth damping cycle is found and attracting") {
  for (SwitchCase k : {SwitchCase::SwitchY, SwitchCase::SwitchX}) {
    const LienardSystem sys = van_der_pol(k);
    const PlanarField field = PlanarField::from_system(sys, 0.0, 0.01);
    SimConfig config;
    const CycleScan scan = find_cycles(field, 1.0, 3.0, 40, config);
    REQUIRE(scan.cycles.size() == 1);
    CHECK(scan.cycles[0].h_star == doctest::Approx(2.0).epsilon(0.01));
    CHECK(scan.cycles[0].stable);
    CHECK(std::abs(scan.cycles[0].residual) <= 1e-9 * scan.cycles[0].section_coord);
    const double predicted = hp_eval(case_x_m0(van_der_pol(SwitchCase::SwitchX)), 2.0);
    CHECK(predicted == doctest::Approx(0.0).scale(1e-12));
  }
}

TEST_CASE("serial and parallel displacement scans agree") {
  const PlanarField field = PlanarField::from_system(van_der_pol(SwitchCase::SwitchX), 0.0, 0.05);
  SimConfig config;
  std::vector<double> radii;
  for (int i = 0; i < 16; ++i) radii.push_back(0.5 + 0.2 * i);
  const auto a = scan_displacement(field, radii, config, Execution::Serial);
  const auto b = scan_displacement(field, radii, config, Execution::Parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].ok == b[i].ok);
    CHECK(a[i].d == b[i].d);
  }
}

TEST_CASE("simulator failures") {
  LienardSystem sys = van_der_pol(SwitchCase::SwitchX);
  sys.a0[0] = -5;
  sys.a0[2] = 0;
  const PlanarField field = PlanarField::from_system(sys, 0.0, 1.0);
  SimConfig config;
  config.r_max = 3.0;
  try {
    advance_to_section(field, 2.0, config);
    FAIL("expected escape");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EscapeAnnulus);
  }
  const auto samples = scan_displacement(field, {2.0}, config, Execution::Serial);
  CHECK_FALSE(samples[0].ok);
  CHECK(samples[0].failure == ErrorKind::EscapeAnnulus);

  SimConfig short_run;
  short_run.max_steps = 3;
  CHECK_THROWS_AS(advance_to_section(PlanarField::from_system(van_der_pol(SwitchCase::SwitchY), 0.0, 0.0), 1.0,
                                     short_run),
                  Error);
  CHECK_THROWS_AS(advance_to_section(field, 5.0, config), Error);
}

TEST_CASE("four-cycle example in simulation") {
  // Reported, not asserted: the switched term is O(lambda) and one-signed.
  const LienardSystem sys = load_preset("example1");
  const PlanarField field = PlanarField::from_system(sys, sys.lambda, sys.eps);
  SimConfig config;
  const double r = std::sqrt(2.0);
  const double lo = displacement(field, 0.8 * r, config);
  const double hi = displacement(field, 1.2 * r, config);
  MESSAGE("d(0.8 sqrt2) = " << lo << ", d(1.2 sqrt2) = " << hi);
  CHECK(std::isfinite(lo));
  CHECK(std::isfinite(hi));
}

#include <doctest.h>

#include <random>

#include "lienard/design.hpp"
#include "lienard/errors.hpp"
#include "lienard/melnikov.hpp"
#include "lienard/presets.hpp"
#include "lienard/roots.hpp"

using namespace lienard;

namespace {

void check_roots_at(const HalfPowerPoly& m1, const std::vector<double>& targets) {
  const RootReport r = isolate_positive_roots(m1);
  CHECK(r.certified_count() == static_cast<int>(targets.size()));
  for (double h : targets) {
    const bool hit = std::any_of(r.roots.begin(), r.roots.end(),
                                 [&](const RootInterval& x) { return std::abs(x.h_mid - h) <= 1e-8 * (1 + h); });
    INFO("target " << h);
    CHECK(hit);
  }
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("reachable exponents") {
  CHECK(design_exponents(SwitchCase::SwitchY, 3, 3) == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(design_exponents(SwitchCase::SwitchY, 0, 0) == std::vector<int>{1, 2});
  CHECK(design_exponents(SwitchCase::SwitchX, 3, 3) == std::vector<int>{2, 3, 4, 5, 7});
  CHECK(design_exponents(SwitchCase::SwitchX, 2, 0) == std::vector<int>{2, 3, 4});
}

TEST_CASE("switching on y reproduces the four-cycle example") {
  const DesignResult d = design_case_y(3, 3, {1, 4, 9, 16});
  const LienardSystem ex1 = load_preset("example1");
  CHECK(d.system.a1 == ex1.a1);
  CHECK(d.system.b0 == ex1.b0);
  CHECK(d.system.b1 == ex1.b1);
  CHECK(d.system.c == ex1.c);
  CHECK(case_y_m1(d.system) == case_y_m1(ex1));
  CHECK(case_y_m0(d.system).is_zero());
  CHECK(d.residual == 0.0);
}

TEST_CASE("switching on y: small and random designs") {
  const DesignResult one = design_case_y(0, 0, {1.0});
  check_roots_at(case_y_m1(one.system), {1.0});

  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> h(0.2, 10.0);
  for (int it = 0; it < 30; ++it) {
    const int m = 1 + it % 5, n = 1 + (it / 5) % 5;
    const int count = std::min<int>(zero_bound(SwitchCase::SwitchY, m, n, Which::M1),
                                    static_cast<int>(design_exponents(SwitchCase::SwitchY, m, n).size()) - 1);
    std::vector<double> targets;
    while (static_cast<int>(targets.size()) < std::min(count, 4)) {
      const double t = h(rng);
      if (std::all_of(targets.begin(), targets.end(), [&](double x) { return std::abs(x - t) > 0.5; }))
        targets.push_back(t);
    }
    const DesignResult d = design_case_y(m, n, targets);
    INFO("m=" << m << " n=" << n);
    check_roots_at(case_y_m1(d.system), targets);
  }
}

TEST_CASE("switching on x attains the bound numerically") {
  const std::vector<double> targets{0.5, 1.0, 2.0, 3.0};
  const DesignResult d = design_case_x(3, 3, targets);
  CHECK(d.residual <= 1e-9);
  CHECK(case_x_m0(d.system).is_zero());
  check_roots_at(case_x_m1(d.system), targets);

  const DesignResult small = design_case_x(2, 0, {1.0, 2.0});
  CHECK(small.residual <= 1e-9);
  check_roots_at(case_x_m1(small.system), {1.0, 2.0});

  const DesignResult mixed = design_case_x(2, 3, {0.5, 2.0});
  CHECK(mixed.residual <= 1e-9);
  check_roots_at(case_x_m1(mixed.system), {0.5, 2.0});
}

TEST_CASE("switching on x recovers a system for the second example's zeros") {
  const RootReport r = isolate_positive_roots(case_x_m1(load_preset("example2")));
  std::vector<double> targets;
  for (const auto& x : r.roots)
    if (x.certificate != Certificate::SuspectedEvenMultiplicity) targets.push_back(x.h_mid);
  REQUIRE_FALSE(targets.empty());
  const DesignResult d = design_case_x(3, 3, targets);
  check_roots_at(case_x_m1(d.system), targets);
}

TEST_CASE("design errors and trivial designs") {
  CHECK(kind_of([] { design_case_y(3, 3, {1, 2, 3, 4, 5}); }) == ErrorKind::TooManyTargets);
  CHECK(kind_of([] { design_case_x(3, 3, {1, 2, 3, 4, 5}); }) == ErrorKind::TooManyTargets);
  // even degrees leave fewer reachable exponents than the bound
  CHECK(kind_of([] { design_case_y(2, 2, {1, 2, 3, 4}); }) == ErrorKind::InfeasibleShape);
  CHECK(kind_of([] { design_case_x(0, 3, {1}); }) == ErrorKind::InfeasibleShape);
  CHECK(kind_of([] { design_case_y(3, 3, {1, 1}); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { design_case_y(3, 3, {-1}); }) == ErrorKind::InvalidInput);
  const DesignResult z = design_case_y(3, 3, {});
  CHECK(case_y_m1(z.system).is_zero());
  const DesignResult zx = design(SwitchCase::SwitchX, 2, 1, {});
  CHECK(case_x_m1(zx.system).is_zero());
}

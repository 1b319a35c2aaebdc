#include <doctest.h>

#include <random>

#include "lienard/errors.hpp"
#include "lienard/melnikov.hpp"
#include "lienard/presets.hpp"
#include "lienard/roots.hpp"
#include "support/random_systems.hpp"

using namespace lienard;

namespace {

HalfPowerPoly expected_example1_m1() {
  HalfPowerPoly p;
  p.add(1, 24);
  p.add(2, -50);
  p.add(3, 35);
  p.add(4, -10);
  p.add(5, 1);
  return p;
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

TEST_CASE("coefficient maps") {
  CHECK(wallis_odd(0) == RingElem(1));
  CHECK(wallis_odd(1) == RingElem(mpq_class(2, 3)));
  CHECK(wallis_odd(3) == RingElem(mpq_class(16, 35)));
  CHECK(wallis_even(0) == RingElem::monomial(2, 0, 1));
  CHECK(wallis_even(2) == RingElem::pi());
  CHECK(wallis_even(4) == RingElem::monomial(mpq_class(3, 4), 0, 1));
  CHECK(a_tilde_factor(SwitchCase::SwitchY, 0) == RingElem::monomial(2, 0, 1));
  CHECK(a_tilde_factor(SwitchCase::SwitchY, 1) == RingElem::pi());
  CHECK(a_tilde_factor(SwitchCase::SwitchX, 0) == RingElem::monomial(-2, 0, 1));
  CHECK(b_tilde_factor(0) == RingElem::monomial(4, 1, 0));
  CHECK(b_tilde_factor(1) == RingElem::monomial(mpq_class(8, 3), 1, 0));
  CHECK(b_star_factor(0) == RingElem(-2));
  CHECK(c_star_factor(0) == RingElem::monomial(2, 1, 0));
  CHECK(a_hat_factor(0) == RingElem::monomial(mpq_class(-4, 3), 1, 0));
}

TEST_CASE("zero bounds") {
  CHECK(zero_bound(SwitchCase::SwitchY, 3, 3, Which::M1) == 4);
  CHECK(zero_bound(SwitchCase::SwitchY, 3, 3, Which::M0) == 3);
  CHECK(zero_bound(SwitchCase::SwitchX, 3, 3, Which::M1) == 4);
  CHECK(zero_bound(SwitchCase::SwitchX, 2, 0, Which::M1) == 3);
  CHECK(zero_bound(SwitchCase::SwitchX, 3, 3, Which::M0) == 1);
  CHECK_THROWS_AS(zero_bound(SwitchCase::SwitchX, -1, 0, Which::M0), Error);
}

TEST_CASE("four-cycle example M1 is exact") {
  const LienardSystem sys = load_preset("example1");
  CHECK(case_y_m0(sys).is_zero());
  const HalfPowerPoly m1 = case_y_m1(sys);
  CHECK(m1 == expected_example1_m1());
  for (const auto& [k, c] : m1.coeffs()) CHECK(c.is_rational());
  const MelnikovExpansion e = assemble(sys);
  REQUIRE(e.M1);
  CHECK(*e.M1 == m1);
}

TEST_CASE("single endpoint product") {
  LienardSystem sys = LienardSystem::zero(SwitchCase::SwitchY, 0, 1);
  sys.b0[1] = 1;
  sys.c[0] = 1;
  CHECK(case_y_m1(sys) == HalfPowerPoly::term(1, RingElem::monomial(-4, 1, 0)));
}

TEST_CASE("zero systems give zero polynomials") {
  for (SwitchCase k : {SwitchCase::SwitchY, SwitchCase::SwitchX}) {
    const MelnikovExpansion e = assemble(LienardSystem::zero(k, 4, 3));
    CHECK(e.M0.is_zero());
    REQUIRE(e.M1);
    CHECK(e.M1->is_zero());
  }
}

TEST_CASE("remark systems") {
  SUBCASE("eqMM") {
    const LienardSystem sys = load_preset("remark-eqMM");
    const HalfPowerPoly m0 = case_y_m0(sys);
    const RingElem k2 = sys.b0[0];
    CHECK(m0.coeff(1) == RingElem::monomial(4, 1, 0) * k2);
    CHECK(m0.coeff(2) == RingElem::monomial(2, 0, 1) * sys.a0[0]);
    CHECK(m0.coeff(4) == RingElem::pi() * sys.a0[2]);
  }
  SUBCASE("piecewise cubic") {
    const LienardSystem sys = load_preset("remark-pw-cubic");
    HalfPowerPoly want;
    want.add(1, RingElem::monomial(4, 1, 0) * sys.b0[0]);
    want.add(2, RingElem::monomial(2, 0, 1) * sys.a0[0]);
    want.add(3, RingElem::monomial(mpq_class(8, 3), 1, 0) * sys.b0[2]);
    want.add(4, RingElem::pi() * sys.a0[2]);
    CHECK(case_y_m0(sys) == want);
  }
  SUBCASE("smooth cubic") {
    const LienardSystem sys = load_preset("remark-smooth-cubic");
    HalfPowerPoly want;
    want.add(2, RingElem::monomial(-2, 0, 1) * sys.a0[0]);
    want.add(4, RingElem::monomial(-1, 0, 1) * sys.a0[2]);
    CHECK(case_x_m0(sys) == want);
  }
}

TEST_CASE("switching on x: small cases") {
  LienardSystem sys = LienardSystem::zero(SwitchCase::SwitchX, 2, 0);
  sys.a0[0] = 3;
  CHECK(case_x_m0(sys) == HalfPowerPoly::term(2, RingElem::monomial(-6, 0, 1)));
  sys.a0[0] = 0;
  sys.a0[2] = 1;
  CHECK(case_x_m0(sys) == HalfPowerPoly::term(4, RingElem::monomial(-1, 0, 1)));

  LienardSystem odd = LienardSystem::zero(SwitchCase::SwitchX, 1, 0);
  odd.a0[1] = 5;
  CHECK(case_x_m1(odd) == HalfPowerPoly::term(3, RingElem::monomial(mpq_class(-20, 3), 1, 0)));
}

TEST_CASE("second example coefficients") {
  const LienardSystem sys = load_preset("example2");
  const HalfPowerPoly m1 = case_x_m1(sys);
  CHECK(m1.coeff(2) == RingElem(240));
  CHECK(m1.coeff(4) == RingElem(300));
  CHECK(m1.coeff(3) == RingElem(-476));
  CHECK(m1.coeff(5) == RingElem(mpq_class(-4133, 5)));
  CHECK(m1.coeff(7) == RingElem(mpq_class(256, 35) * mpq_class(387067849, 1980160)));
  CHECK(m1.coeffs().size() == 5);
}

TEST_CASE("preconditions") {
  LienardSystem y = LienardSystem::zero(SwitchCase::SwitchY, 2, 2);
  CHECK(kind_of([&] { case_x_m0(y); }) == ErrorKind::WrongCase);
  y.a0[0] = 1;
  CHECK(kind_of([&] { case_y_m1(y); }) == ErrorKind::OddnessViolated);
  CHECK_FALSE(assemble(y).M1.has_value());
  CHECK(assemble(y, {true}).M1.has_value());
  y.a0[0] = 0;
  y.b0[2] = 1;
  CHECK(kind_of([&] { case_y_m1(y); }) == ErrorKind::OddnessViolated);
  LienardSystem x = LienardSystem::zero(SwitchCase::SwitchX, 2, 2);
  x.b0[0] = 1;  // g0 parity is irrelevant when switching on x
  CHECK_NOTHROW(case_x_m1(x));
  x.a0[2] = 1;
  CHECK(kind_of([&] { case_x_m1(x); }) == ErrorKind::OddnessViolated);
  CHECK(case_x_m1(x, {true}) == case_x_m1(project_odd(x)));
}

TEST_CASE("property: odd first-order parts give M0 = 0 exactly") {
  std::mt19937_64 rng(21);
  for (SwitchCase k : {SwitchCase::SwitchY, SwitchCase::SwitchX}) {
    for (int it = 0; it < 100; ++it) {
      LienardSystem sys = testing::random_system(rng, k, testing::odd_shape(k, 9));
      if (k == SwitchCase::SwitchX) sys.b0 = testing::random_coeffs(rng, sys.n, {}, false);
      CHECK(assemble(sys).M0.is_zero());
    }
  }
}

TEST_CASE("property: exponent shape and Descartes count within the bound") {
  std::mt19937_64 rng(22);
  for (SwitchCase k : {SwitchCase::SwitchY, SwitchCase::SwitchX}) {
    for (int it = 0; it < 200; ++it) {
      const LienardSystem sys = testing::random_system(rng, k, testing::odd_shape(k, 9));
      const MelnikovExpansion e = assemble(sys);
      REQUIRE(e.M1);
      if (e.M1->is_zero()) continue;
      const int lowest = *e.M1->lowest();
      CHECK(lowest >= 1);
      if (k == SwitchCase::SwitchY) {
        CHECK(*e.M1->degree() <= std::max(2 * (sys.m / 2) + 2, 4 * (sys.n / 2) + 1));
      } else {
        CHECK(lowest >= 2);
        CHECK(*e.M1->degree() <= std::max(2 * (sys.m / 2) + 3, 2 * (sys.m / 2 + (sys.n + 1) / 2) + 1));
      }
      // sign changes of the s-coefficients bound the positive zeros
      std::vector<long double> q;
      for (double c : hp_to_s_poly(*e.M1)) q.push_back(c);
      const RootReport r = isolate_positive_roots_s(q);
      CHECK(r.descartes_bound <= zero_bound(k, sys.m, sys.n, Which::M1));
    }
  }
}

TEST_CASE("property: M1 is linear in the first-order block") {
  std::mt19937_64 rng(23);
  for (SwitchCase k : {SwitchCase::SwitchY, SwitchCase::SwitchX}) {
    for (int it = 0; it < 50; ++it) {
      const LienardSystem a = testing::random_system(rng, k, testing::odd_shape(k, 6));
      LienardSystem b = a;
      LienardSystem sum = a;
      b.a1 = testing::random_coeffs(rng, a.m, {}, false);
      b.b1 = testing::random_coeffs(rng, a.n, {}, false);
      for (std::size_t i = 0; i < a.a1.size(); ++i) sum.a1[i] = a.a1[i] + b.a1[i];
      for (std::size_t i = 0; i < a.b1.size(); ++i) sum.b1[i] = a.b1[i] + b.b1[i];
      LienardSystem base = a;
      for (auto& v : base.a1) v = RingElem();
      for (auto& v : base.b1) v = RingElem();
      const auto m1 = [](const LienardSystem& s) { return *assemble(s).M1; };
      CHECK(m1(sum) == m1(a) + m1(b) - m1(base));
      if (k == SwitchCase::SwitchY) {
        LienardSystem c = a;
        LienardSystem csum = a;
        c.a0 = testing::random_coeffs(rng, a.m, {}, false);
        for (std::size_t i = 0; i < a.a0.size(); ++i) csum.a0[i] = a.a0[i] + c.a0[i];
        LienardSystem zero_f0 = a;
        for (auto& v : zero_f0.a0) v = RingElem();
        CHECK(case_y_m0(csum) == case_y_m0(a) + case_y_m0(c) - case_y_m0(zero_f0));
      }
    }
  }
}

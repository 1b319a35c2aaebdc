#include "lienard/melnikov.hpp"

#include "lienard/errors.hpp"

namespace lienard {

namespace {

const RingElem& coeff_or_zero(const std::vector<RingElem>& v, int idx) {
  static const RingElem kZero{};
  return (idx >= 0 && static_cast<std::size_t>(idx) < v.size()) ? v[static_cast<std::size_t>(idx)] : kZero;
}

void require_case(const LienardSystem& sys, SwitchCase want) {
  if (sys.kase != want)
    throw Error(ErrorKind::WrongCase, "expected case " + std::string(to_string(want)) + ", got " +
                                          std::string(to_string(sys.kase)));
}

mpz_class binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// sum_j a~_j h^(j+1) over the even coefficients of f
HalfPowerPoly even_area_terms(SwitchCase kase, const std::vector<RingElem>& f, int m) {
  HalfPowerPoly p;
  for (int j = 0; j <= m / 2; ++j) p.add(2 * j + 2, a_tilde_factor(kase, j) * coeff_or_zero(f, 2 * j));
  return p;
}

// sum_j b~_j h^(j+1/2) over the even coefficients of g (switching on y)
HalfPowerPoly even_chord_terms(const std::vector<RingElem>& g, int n) {
  HalfPowerPoly p;
  for (int j = 0; j <= n / 2; ++j) p.add(2 * j + 1, b_tilde_factor(j) * coeff_or_zero(g, 2 * j));
  return p;
}

// endpoint correction: (sum b*_i h^i) (sum c*_j h^(j+1/2))
HalfPowerPoly case_y_endpoint_terms(const LienardSystem& sys) {
  const int half = sys.n / 2;
  HalfPowerPoly p;
  for (int i = 0; i <= half; ++i) {
    RingElem bs = b_star_factor(i) * coeff_or_zero(sys.b0, 2 * i + 1);
    if (bs.is_zero()) continue;
    for (int j = 0; j <= half; ++j) {
      RingElem cs = c_star_factor(j) * coeff_or_zero(sys.c, 2 * j);
      p.add(2 * (i + j) + 1, bs * cs);
    }
  }
  return p;
}

// sum_l a*_l h^(l+3/2)
HalfPowerPoly case_x_time_terms(const LienardSystem& sys) {
  HalfPowerPoly p;
  if (sys.n < 1) return p;
  const int half_m = sys.m / 2;
  const int n_tilde = (sys.n + 1) / 2 - 1;
  for (int l = 0; l <= half_m + n_tilde; ++l) {
    RingElem conv;
    for (int i = 0; i <= half_m; ++i) {
      int j = l - i;
      if (j < 0 || j > n_tilde) continue;
      conv += RingElem(mpq_class(2, j + 1)) * coeff_or_zero(sys.a0, 2 * i + 1) * coeff_or_zero(sys.c, 2 * j + 1);
    }
    if (!conv.is_zero()) p.add(2 * l + 3, half_arc_moment_factor(l) * conv);
  }
  return p;
}

// sum_i a^_i h^(i+3/2)
HalfPowerPoly case_x_half_arc_terms(const LienardSystem& sys) {
  HalfPowerPoly p;
  for (int i = 0; i <= sys.m / 2; ++i) p.add(2 * i + 3, a_hat_factor(i) * coeff_or_zero(sys.a0, 2 * i + 1));
  return p;
}

LienardSystem checked_odd(const LienardSystem& sys, AssemblyOptions opts) {
  if (opts.project_odd) return project_odd(sys);
  if (!is_odd(sys.a0)) throw Error(ErrorKind::OddnessViolated, "f0 has a nonzero even-index coefficient");
  if (sys.kase == SwitchCase::SwitchY && !is_odd(sys.b0))
    throw Error(ErrorKind::OddnessViolated, "g0 has a nonzero even-index coefficient");
  return sys;
}

}  // namespace

RingElem wallis_odd(int i) {
  mpq_class w = 1;
  for (int l = 1; l <= i; ++l) w *= mpq_class(2 * l, 2 * l + 1);
  return RingElem(w);
}

RingElem wallis_even(int j) {
  if (j < 0 || j % 2 != 0) throw Error(ErrorKind::InvalidInput, "wallis_even needs an even exponent");
  mpq_class w = 2;
  for (int l = 1; l <= j / 2; ++l) w *= mpq_class(2 * l - 1, 2 * l);
  return RingElem::monomial(w, 0, 1);
}

RingElem a_tilde_factor(SwitchCase kase, int j) {
  mpq_class prod = 1;
  for (int l = 1; l <= j; ++l) prod *= mpq_class(2 * l - 1, l);
  mpq_class q = mpq_class(2, j + 1) * prod;
  if (kase == SwitchCase::SwitchX) q = -q;
  return RingElem::monomial(q, 0, 1);
}

RingElem b_tilde_factor(int j) { return RingElem::monomial(mpq_class(1, 2 * j + 1), 2 * j + 5, 0); }

RingElem b_star_factor(int i) { return RingElem::monomial(-1, 2 * i + 2, 0); }

RingElem c_star_factor(int j) { return RingElem::monomial(mpq_class(1, 2 * j + 1), 2 * j + 3, 0); }

RingElem half_arc_moment_factor(int l) {
  mpq_class s = 0;
  for (int k = 0; k <= l + 1; ++k) {
    mpq_class term(binomial(l + 1, k), mpz_class(2 * k + 1));
    s += (k % 2 == 0) ? term : -term;
  }
  return RingElem::monomial(s, 2 * l + 3, 0);
}

RingElem a_hat_factor(int i) {
  return RingElem::monomial(mpq_class(-1, 2 * i + 3), 2 * i + 5, 0) * wallis_odd(i);
}

HalfPowerPoly case_y_m0(const LienardSystem& sys) {
  require_case(sys, SwitchCase::SwitchY);
  sys.validate();
  return even_area_terms(sys.kase, sys.a0, sys.m) + even_chord_terms(sys.b0, sys.n);
}

HalfPowerPoly case_y_m1(const LienardSystem& sys, AssemblyOptions opts) {
  require_case(sys, SwitchCase::SwitchY);
  sys.validate();
  LienardSystem s = checked_odd(sys, opts);
  return even_area_terms(s.kase, s.a1, s.m) + even_chord_terms(s.b1, s.n) + case_y_endpoint_terms(s);
}

HalfPowerPoly case_x_m0(const LienardSystem& sys) {
  require_case(sys, SwitchCase::SwitchX);
  sys.validate();
  return even_area_terms(sys.kase, sys.a0, sys.m);
}

HalfPowerPoly case_x_m1(const LienardSystem& sys, AssemblyOptions opts) {
  require_case(sys, SwitchCase::SwitchX);
  sys.validate();
  LienardSystem s = checked_odd(sys, opts);
  return even_area_terms(s.kase, s.a1, s.m) + case_x_time_terms(s) + case_x_half_arc_terms(s);
}

IntegralTerms closed_form_terms(const LienardSystem& sys) {
  sys.validate();
  IntegralTerms t;
  t.kase = sys.kase;
  const bool f0_odd = is_odd(sys.a0);
  if (sys.kase == SwitchCase::SwitchY) {
    const bool g0_odd = is_odd(sys.b0);
    t.I[0] = case_y_m0(sys);
    t.I[1] = even_area_terms(sys.kase, sys.a1, sys.m) + even_chord_terms(sys.b1, sys.n);
    t.I[2] = HalfPowerPoly{};  // symmetric arcs cancel for any f0
    if (g0_odd) t.I[3] = case_y_endpoint_terms(sys);
    if (f0_odd && g0_odd) t.I[4] = HalfPowerPoly{};
  } else {
    t.I[0] = case_x_m0(sys);
    t.I[1] = even_area_terms(sys.kase, sys.a1, sys.m);
    if (f0_odd) {
      t.I[2] = case_x_time_terms(sys);
      t.I[3] = case_x_half_arc_terms(sys);
    }
  }
  return t;
}

MelnikovExpansion assemble(const LienardSystem& sys, AssemblyOptions opts) {
  MelnikovExpansion e;
  e.kase = sys.kase;
  e.m = sys.m;
  e.n = sys.n;
  const bool odd = is_odd(sys.a0) && (sys.kase == SwitchCase::SwitchX || is_odd(sys.b0));
  if (sys.kase == SwitchCase::SwitchY) {
    e.M0 = case_y_m0(sys);
    if (odd || opts.project_odd) e.M1 = case_y_m1(sys, opts);
  } else {
    e.M0 = case_x_m0(sys);
    if (odd || opts.project_odd) e.M1 = case_x_m1(sys, opts);
  }
  return e;
}

int zero_bound(SwitchCase kase, int m, int n, Which which) {
  if (m < 0 || n < 0) throw Error(ErrorKind::InvalidInput, "degrees must be non-negative");
  if (kase == SwitchCase::SwitchY) return which == Which::M0 ? m / 2 + n / 2 + 1 : m / 2 + 2 * (n / 2) + 1;
  if (which == Which::M0) return m / 2;
  return n >= 1 ? 2 * (m / 2) + (n + 1) / 2 : 2 * (m / 2) + 1;
}

}  // namespace lienard

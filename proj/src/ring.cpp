#include "lienard/ring.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lienard/errors.hpp"

namespace lienard {

namespace {

// floor division for possibly negative sqrt(2) exponents
int floor_div2(int e) { return e >= 0 ? e / 2 : -((-e + 1) / 2); }

mpq_class pow2(int k) {
  mpz_class z = 1;
  mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(k < 0 ? -k : k));
  return k >= 0 ? mpq_class(z) : mpq_class(mpz_class(1), z);
}

template <typename Real>
Real pi_power(int p) {
  Real pi = std::numbers::pi_v<Real>;
  Real r = 1;
  Real base = p >= 0 ? pi : Real(1) / pi;
  for (int k = 0; k < std::abs(p); ++k) r *= base;
  return r;
}

}  // namespace

RingElem::RingElem(const mpq_class& q) {
  if (q != 0) {
    mpq_class c = q;
    c.canonicalize();
    terms_.emplace(Key{0, 0}, c);
  }
}

void RingElem::add_term(mpq_class q, int e, int p) {
  if (q == 0) return;
  int half = floor_div2(e);
  int rem = e - 2 * half;
  q *= pow2(half);
  q.canonicalize();
  Key key{rem, p};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, q);
  } else {
    it->second += q;
    if (it->second == 0) terms_.erase(it);
  }
}

RingElem RingElem::monomial(const mpq_class& q, int sqrt2_exp, int pi_exp) {
  RingElem r;
  r.add_term(q, sqrt2_exp, pi_exp);
  return r;
}

RingElem RingElem::from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidInput, "non-finite coefficient");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), v);  // exact: doubles are dyadic rationals
  return RingElem(q);
}

RingElem RingElem::from_terms(const std::vector<RingTerm>& terms) {
  RingElem r;
  for (const auto& t : terms) r.add_term(t.q, t.e, t.p);
  return r;
}

RingElem ring_normalize(const std::vector<RingTerm>& terms) { return RingElem::from_terms(terms); }

bool RingElem::is_rational() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
}

mpq_class RingElem::as_rational() const {
  if (!is_rational()) throw Error(ErrorKind::InvalidInput, "ring element " + to_string() + " is not rational");
  return terms_.empty() ? mpq_class(0) : terms_.begin()->second;
}

std::vector<RingTerm> RingElem::terms() const {
  std::vector<RingTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, q] : terms_) out.push_back({q, key.first, key.second});
  return out;
}

double RingElem::to_double() const {
  double sum = 0.0;
  for (const auto& [key, q] : terms_) {
    double t = q.get_d() * pi_power<double>(key.second);
    if (key.first == 1) t *= std::numbers::sqrt2;
    sum += t;
  }
  return sum;
}

long double RingElem::to_long_double() const {
  long double sum = 0.0L;
  for (const auto& [key, q] : terms_) {
    // two-step conversion keeps ~64 significant bits of the rational
    double hi = q.get_d();
    mpq_class rest = q - mpq_class(hi);
    long double t = (hi + static_cast<long double>(rest.get_d())) * pi_power<long double>(key.second);
    if (key.first == 1) t *= std::numbers::sqrt2_v<long double>;
    sum += t;
  }
  return sum;
}

RingElem RingElem::operator-() const {
  RingElem r = *this;
  for (auto& [key, q] : r.terms_) q = -q;
  return r;
}

RingElem operator+(const RingElem& a, const RingElem& b) {
  RingElem r = a;
  for (const auto& [key, q] : b.terms_) r.add_term(q, key.first, key.second);
  return r;
}

RingElem operator-(const RingElem& a, const RingElem& b) { return a + (-b); }

RingElem operator*(const RingElem& a, const RingElem& b) {
  RingElem r;
  for (const auto& [ka, qa] : a.terms_) {
    for (const auto& [kb, qb] : b.terms_) {
      r.add_term(qa * qb, ka.first + kb.first, ka.second + kb.second);
    }
  }
  return r;
}

RingElem operator/(const RingElem& a, const RingElem& b) {
  if (!b.is_monomial()) throw Error(ErrorKind::InvalidInput, "division by non-monomial ring element " + b.to_string());
  const auto& [key, q] = *b.raw().begin();
  // 1 / (q sqrt2^e pi^p) = (1/q) sqrt2^-e pi^-p
  RingElem inv = RingElem::monomial(1 / q, -key.first, -key.second);
  return a * inv;
}

std::string RingElem::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, q] : terms_) {
    mpq_class c = q;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    } else if (c < 0) {
      os << "-";
      c = abs(c);
    }
    first = false;
    bool unit = (c == 1) && (key.first != 0 || key.second != 0);
    if (!unit) os << c.get_str();
    bool need_mul = !unit;
    if (key.first == 1) {
      os << (need_mul ? "*" : "") << "sqrt2";
      need_mul = true;
    }
    if (key.second != 0) {
      os << (need_mul ? "*" : "") << "pi";
      if (key.second != 1) os << "^" << key.second;
    }
  }
  return os.str();
}

}  // namespace lienard

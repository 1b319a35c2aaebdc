#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace lienard {

/// One monomial q * 2^(e/2) * pi^p of a RingElem.
struct RingTerm {
  mpq_class q;
  int e = 0;  // exponent of sqrt(2)
  int p = 0;  // exponent of pi
};

/// Exact scalar in the ring Q[sqrt(2), pi, 1/pi].
///
/// Stored canonically: the sqrt(2) exponent of every key is 0 or 1 (even powers
/// are folded into the rational), there is at most one term per (e, p) and no
/// term has a zero rational. Values are immutable once built; every operation
/// returns a new element.
class RingElem {
 public:
  using Key = std::pair<int, int>;  // (e in {0,1}, p)

  RingElem() = default;
  RingElem(long v) : RingElem(mpq_class(v)) {}  // NOLINT(implicit)
  RingElem(int v) : RingElem(mpq_class(v)) {}   // NOLINT(implicit)
  RingElem(const mpq_class& q);                 // NOLINT(implicit)

  static RingElem monomial(const mpq_class& q, int sqrt2_exp, int pi_exp);
  static RingElem rational(long num, long den) { return RingElem(mpq_class(num, den)); }
  static RingElem sqrt2() { return monomial(1, 1, 0); }
  static RingElem pi() { return monomial(1, 0, 1); }
  static RingElem pi_pow(int p) { return monomial(1, 0, p); }
  static RingElem sqrt2_pow(int e) { return monomial(1, e, 0); }

  /// Exact binary expansion of a finite double.
  static RingElem from_double(double v);

  /// Builds from arbitrary (possibly non-canonical) terms, folding as needed.
  static RingElem from_terms(const std::vector<RingTerm>& terms);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_rational() const noexcept;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Canonical term list, ordered by (e, p).
  std::vector<RingTerm> terms() const;
  const std::map<Key, mpq_class>& raw() const noexcept { return terms_; }

  /// Rational part if this element is rational; throws otherwise.
  mpq_class as_rational() const;

  double to_double() const;
  long double to_long_double() const;

  RingElem operator-() const;
  friend RingElem operator+(const RingElem& a, const RingElem& b);
  friend RingElem operator-(const RingElem& a, const RingElem& b);
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  /// Division is only defined by a single-term (monomial) divisor.
  friend RingElem operator/(const RingElem& a, const RingElem& b);
  RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
  RingElem& operator-=(const RingElem& o) { return *this = *this - o; }
  RingElem& operator*=(const RingElem& o) { return *this = *this * o; }

  friend bool operator==(const RingElem& a, const RingElem& b) { return a.terms_ == b.terms_; }

  /// Human-readable form such as "2*sqrt2 - 25/pi".
  std::string to_string() const;

 private:
  void add_term(mpq_class q, int e, int p);

  std::map<Key, mpq_class> terms_;
};

/// Folds the sqrt(2) exponents of a raw term list and merges like terms.
RingElem ring_normalize(const std::vector<RingTerm>& terms);

}  // namespace lienard

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lienard/ring.hpp"

namespace lienard {

enum class Precision { Double, LongDouble };

/// Finite sum  sum_k c_k h^(k/2)  with exact ring coefficients.
///
/// Keys are the doubled exponent k >= 0 so that h^(1/2) has key 1 and h^2 key 4.
/// Zero coefficients are never stored.
class HalfPowerPoly {
 public:
  HalfPowerPoly() = default;

  static HalfPowerPoly term(int k, const RingElem& c);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Largest key present; empty for the zero polynomial.
  std::optional<int> degree() const;
  std::optional<int> lowest() const;

  RingElem coeff(int k) const;
  const std::map<int, RingElem>& coeffs() const noexcept { return coeffs_; }

  /// Adds c * h^(k/2) in place.
  void add(int k, const RingElem& c);

  HalfPowerPoly operator-() const;
  friend HalfPowerPoly operator+(const HalfPowerPoly& a, const HalfPowerPoly& b);
  friend HalfPowerPoly operator-(const HalfPowerPoly& a, const HalfPowerPoly& b);
  friend HalfPowerPoly operator*(const HalfPowerPoly& a, const HalfPowerPoly& b);
  friend HalfPowerPoly operator*(const RingElem& s, const HalfPowerPoly& p);
  friend bool operator==(const HalfPowerPoly& a, const HalfPowerPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  std::map<int, RingElem> coeffs_;
};

/// Evaluates P(h); throws NegativeEnergy for h < 0.
double hp_eval(const HalfPowerPoly& p, double h, Precision precision = Precision::Double);

/// Dense coefficients of Q(s) with Q(sqrt(h)) = P(h); index is the power of s.
std::vector<double> hp_to_s_poly(const HalfPowerPoly& p);

/// Horner evaluation of a dense polynomial (index = power).
double poly_eval(const std::vector<double>& coeffs, double x);

}  // namespace lienard

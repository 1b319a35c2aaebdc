#include "lienard/half_power_poly.hpp"

#include <cmath>
#include <sstream>

#include "lienard/errors.hpp"

namespace lienard {

HalfPowerPoly HalfPowerPoly::term(int k, const RingElem& c) {
  HalfPowerPoly p;
  p.add(k, c);
  return p;
}

std::optional<int> HalfPowerPoly::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.rbegin()->first;
}

std::optional<int> HalfPowerPoly::lowest() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.begin()->first;
}

RingElem HalfPowerPoly::coeff(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? RingElem{} : it->second;
}

void HalfPowerPoly::add(int k, const RingElem& c) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "negative half-power key " + std::to_string(k));
  if (c.is_zero()) return;
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) {
    coeffs_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

HalfPowerPoly HalfPowerPoly::operator-() const {
  HalfPowerPoly r;
  for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, -c);
  return r;
}

HalfPowerPoly operator+(const HalfPowerPoly& a, const HalfPowerPoly& b) {
  HalfPowerPoly r = a;
  for (const auto& [k, c] : b.coeffs_) r.add(k, c);
  return r;
}

HalfPowerPoly operator-(const HalfPowerPoly& a, const HalfPowerPoly& b) { return a + (-b); }

HalfPowerPoly operator*(const HalfPowerPoly& a, const HalfPowerPoly& b) {
  HalfPowerPoly r;
  for (const auto& [ka, ca] : a.coeffs_)
    for (const auto& [kb, cb] : b.coeffs_) r.add(ka + kb, ca * cb);
  return r;
}

HalfPowerPoly operator*(const RingElem& s, const HalfPowerPoly& p) {
  HalfPowerPoly r;
  for (const auto& [k, c] : p.coeffs_) r.add(k, s * c);
  return r;
}

std::string HalfPowerPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (k == 0) continue;
    os << "*h";
    if (k % 2 == 0) {
      if (k != 2) os << "^" << k / 2;
    } else {
      os << "^(" << k << "/2)";
    }
  }
  return os.str();
}

double hp_eval(const HalfPowerPoly& p, double h, Precision precision) {
  if (h < 0) throw Error(ErrorKind::NegativeEnergy, "h = " + std::to_string(h));
  if (precision == Precision::LongDouble) {
    long double s = std::sqrt(static_cast<long double>(h));
    long double sum = 0.0L;
    for (const auto& [k, c] : p.coeffs()) sum += c.to_long_double() * std::pow(s, static_cast<long double>(k));
    return static_cast<double>(sum);
  }
  double s = std::sqrt(h);
  double sum = 0.0;
  for (const auto& [k, c] : p.coeffs()) {
    // integer powers of h stay exact where possible
    double hk = (k % 2 == 0) ? std::pow(h, k / 2) : std::pow(h, k / 2) * s;
    sum += c.to_double() * hk;
  }
  return sum;
}

std::vector<double> hp_to_s_poly(const HalfPowerPoly& p) {
  auto deg = p.degree();
  if (!deg) return {0.0};
  std::vector<double> q(static_cast<std::size_t>(*deg) + 1, 0.0);
  for (const auto& [k, c] : p.coeffs()) q[static_cast<std::size_t>(k)] = c.to_double();
  return q;
}

double poly_eval(const std::vector<double>& coeffs, double x) {
  double r = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
  return r;
}

}  // namespace lienard

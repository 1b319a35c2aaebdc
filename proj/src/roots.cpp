#include "lienard/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <sstream>

#include "lienard/errors.hpp"

namespace lienard {

namespace {

using Poly = std::vector<long double>;

// Off-center split keeps dyadic and small rational roots away from split points.
constexpr long double kSplits[] = {0.5031415926535L, 0.4527182818L, 0.5617234L, 0.3819660113L, 0.6180339887L};

long double eval(const Poly& q, long double x) {
  long double acc = 0.0L;
  for (std::size_t i = q.size(); i-- > 0;) acc = acc * x + q[i];
  return acc;
}

int sign(long double v) { return (v > 0) - (v < 0); }

// q(x + c)
Poly taylor_shift(Poly q, long double c) {
  const std::size_t n = q.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) q[j - 1] += c * q[j];
  return q;
}

int variations(const Poly& q) {
  int count = 0;
  int last = 0;
  for (long double c : q) {
    const int s = sign(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Descartes count of roots of q in (a, b): variations of (1+x)^d q((a + b x)/(1+x)).
int interval_variations(const Poly& q, long double a, long double b) {
  Poly t = q;
  // q(a + (b - a) y)
  t = taylor_shift(t, a);
  long double scale = 1.0L;
  for (auto& c : t) {
    c *= scale;
    scale *= (b - a);
  }
  // y = 1/(1+x): reverse then shift by 1
  std::reverse(t.begin(), t.end());
  t = taylor_shift(t, 1.0L);
  return variations(t);
}

long double cauchy_bound(const Poly& q) {
  const long double top = q.back();
  long double m = 0.0L;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) m = std::max(m, std::fabs(q[i] / top));
  return 1.0L + m;
}

// Bisection on a sign-change interval down to the requested width.
RootInterval refine(const Poly& q, long double a, long double b, Certificate cert, double width) {
  long double fa = eval(q, a);
  for (int it = 0; it < 400 && b - a > width; ++it) {
    const long double mid = 0.5L * (a + b);
    const long double fm = eval(q, mid);
    if (fm == 0.0L) {
      a = b = mid;
      break;
    }
    if (sign(fm) == sign(fa)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  RootInterval r;
  r.s_lo = static_cast<double>(a);
  r.s_hi = static_cast<double>(b);
  r.s_mid = static_cast<double>(0.5L * (a + b));
  r.h_mid = r.s_mid * r.s_mid;
  r.certificate = cert;
  return r;
}

// Rounding-error bound for evaluating q at x.
long double noise(const Poly& q, long double x) {
  long double acc = 0.0L;
  for (std::size_t i = q.size(); i-- > 0;) acc = acc * std::fabs(x) + std::fabs(q[i]);
  return 64.0L * std::numeric_limits<long double>::epsilon() * acc;
}

// Widens a tiny cluster until both endpoint values clear the rounding noise, then classifies it by their signs.
RootInterval classify_cluster(const Poly& q, long double a, long double b) {
  const long double center = 0.5L * (a + b);
  const long double scale = std::max(1.0L, std::fabs(center));
  long double lo = a, hi = b;
  for (long double delta = 1e-9L * scale; delta <= 1e-3L * scale; delta *= 2.0L) {
    const bool lo_clear = std::fabs(eval(q, lo)) > noise(q, lo);
    const bool hi_clear = std::fabs(eval(q, hi)) > noise(q, hi);
    if (lo_clear && hi_clear) break;
    if (!lo_clear) lo = std::max(0.0L, a - delta);
    if (!hi_clear) hi = b + delta;
  }
  const Certificate cert = sign(eval(q, lo)) * sign(eval(q, hi)) < 0 ? Certificate::OddMultiplicitySignChange
                                                                     : Certificate::SuspectedEvenMultiplicity;
  RootInterval r;
  r.s_lo = static_cast<double>(lo);
  r.s_hi = static_cast<double>(hi);
  r.s_mid = static_cast<double>(center);
  r.h_mid = r.s_mid * r.s_mid;
  r.certificate = cert;
  return r;
}

}  // namespace

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::SimpleSignChange:
      return "SimpleSignChange";
    case Certificate::OddMultiplicitySignChange:
      return "OddMultiplicitySignChange";
    case Certificate::SuspectedEvenMultiplicity:
      return "SuspectedEvenMultiplicity";
  }
  return "?";
}

int RootReport::certified_count() const {
  return static_cast<int>(std::count_if(roots.begin(), roots.end(), [](const RootInterval& r) {
    return r.certificate != Certificate::SuspectedEvenMultiplicity;
  }));
}

RootReport isolate_positive_roots(const HalfPowerPoly& p, const RootOptions& opts) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "the polynomial is identically zero");
  Poly q(static_cast<std::size_t>(*p.degree()) + 1, 0.0L);
  for (const auto& [k, c] : p.coeffs()) q[static_cast<std::size_t>(k)] = c.to_long_double();
  return isolate_positive_roots_s(q, opts);
}

RootReport isolate_positive_roots_s(const std::vector<long double>& input, const RootOptions& opts) {
  Poly q = input;
  for (long double c : q)
    if (!std::isfinite(c)) throw Error(ErrorKind::PrecisionLoss, "non-finite coefficient");
  while (!q.empty() && q.back() == 0.0L) q.pop_back();
  if (q.empty()) throw Error(ErrorKind::ZeroPolynomial, "the polynomial is identically zero");
  // s = 0 is not a positive root
  const auto first = std::find_if(q.begin(), q.end(), [](long double c) { return c != 0.0L; });
  q.erase(q.begin(), first);
  long double big = 0.0L;
  for (long double c : q) big = std::max(big, std::fabs(c));
  for (auto& c : q) c /= big;

  RootReport report;
  report.descartes_bound = variations(q);
  if (q.size() == 1 || report.descartes_bound == 0) return report;

  const long double bound = cauchy_bound(q);
  if (!std::isfinite(bound)) throw Error(ErrorKind::PrecisionLoss, "root bound overflows");

  struct Job {
    long double a, b;
    int depth;
  };
  std::vector<Job> stack{{0.0L, bound, 0}};
  std::vector<std::pair<long double, long double>> clusters;
  while (!stack.empty()) {
    const Job job = stack.back();
    stack.pop_back();
    const int v = interval_variations(q, job.a, job.b);
    if (v == 0) continue;
    const long double fa = eval(q, job.a);
    const long double fb = eval(q, job.b);
    if (v == 1 && sign(fa) * sign(fb) < 0) {
      report.roots.push_back(refine(q, job.a, job.b, Certificate::SimpleSignChange, opts.width));
      continue;
    }
    if (job.b - job.a < opts.cluster_width || job.depth >= opts.max_depth) {
      clusters.push_back({job.a, job.b});
      continue;
    }
    // split away from points where the value is lost in rounding
    long double mid = 0.0L;
    bool clean = false;
    for (long double ratio : kSplits) {
      mid = job.a + ratio * (job.b - job.a);
      if (std::fabs(eval(q, mid)) > noise(q, mid)) {
        clean = true;
        break;
      }
    }
    if (!clean) {
      clusters.push_back({job.a, job.b});
      continue;
    }
    stack.push_back({mid, job.b, job.depth + 1});
    stack.push_back({job.a, mid, job.depth + 1});
  }
  // neighbouring tiny intervals belong to one cluster
  std::sort(clusters.begin(), clusters.end());
  std::vector<std::pair<long double, long double>> merged;
  for (const auto& c : clusters) {
    const long double gap = 1e-6L * std::max(1.0L, std::fabs(c.first));
    if (!merged.empty() && c.first - merged.back().second <= gap)
      merged.back().second = std::max(merged.back().second, c.second);
    else
      merged.push_back(c);
  }
  for (const auto& [a, b] : merged) report.roots.push_back(classify_cluster(q, a, b));
  std::sort(report.roots.begin(), report.roots.end(),
            [](const RootInterval& x, const RootInterval& y) { return x.s_mid < y.s_mid; });
  return report;
}

BoundCheck check_against_bound(const RootReport& report, int bound) {
  BoundCheck c;
  c.bound = bound;
  c.count = report.certified_count();
  c.slack = bound - c.count;
  c.ok = c.count <= bound;
  c.certified = c.count == static_cast<int>(report.roots.size());
  std::ostringstream os;
  os << c.count << " certified root(s), bound " << bound << ", descartes " << report.descartes_bound;
  const int suspected = static_cast<int>(report.roots.size()) - c.count;
  if (suspected > 0) os << ", " << suspected << " suspected even-multiplicity cluster(s)";
  c.diagnostics = os.str();
  return c;
}

std::string roots_csv_header() { return "k,s_lo,s_hi,s_mid,h_mid,certificate"; }

std::string to_csv(const RootReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << roots_csv_header() << '\n';
  for (std::size_t k = 0; k < report.roots.size(); ++k) {
    const auto& r = report.roots[k];
    os << k << ',' << r.s_lo << ',' << r.s_hi << ',' << r.s_mid << ',' << r.h_mid << ',' << to_string(r.certificate)
       << '\n';
  }
  return os.str();
}

}  // namespace lienard

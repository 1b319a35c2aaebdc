#include "lienard/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include <Eigen/Dense>

#include "lienard/errors.hpp"
#include "lienard/melnikov.hpp"

namespace lienard {

namespace {

void check_targets(SwitchCase kase, int m, int n, const std::vector<double>& targets) {
  if (m < 0 || n < 0) throw Error(ErrorKind::InvalidInput, "degrees must be non-negative");
  for (double h : targets)
    if (!(h > 0) || !std::isfinite(h)) throw Error(ErrorKind::InvalidInput, "targets must be positive and finite");
  std::set<double> distinct(targets.begin(), targets.end());
  if (distinct.size() != targets.size()) throw Error(ErrorKind::InvalidInput, "targets must be distinct");
  const int bound = zero_bound(kase, m, n, Which::M1);
  if (static_cast<int>(targets.size()) > bound)
    throw Error(ErrorKind::TooManyTargets, std::to_string(targets.size()) + " targets exceed the bound " +
                                               std::to_string(bound));
  if (static_cast<int>(design_exponents(kase, m, n).size()) < static_cast<int>(targets.size()) + 1)
    throw Error(ErrorKind::InfeasibleShape, "the reachable exponents of M1 cannot carry " +
                                                std::to_string(targets.size()) + " zeros for m = " + std::to_string(m) +
                                                ", n = " + std::to_string(n));
}

mpq_class exact(double v) {
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), v);
  return q;
}

mpq_class power(const mpq_class& x, int k) {
  mpq_class r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Monic combination of s^e, e in exps, vanishing at every root; the top exponent gets 1.
std::vector<mpq_class> vanishing_combination(const std::vector<int>& exps, const std::vector<mpq_class>& roots) {
  const std::size_t k = roots.size();
  std::vector<std::vector<mpq_class>> a(k, std::vector<mpq_class>(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = power(roots[i], exps[j]);
    a[i][k] = -power(roots[i], exps[k]);
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && a[piv][col] == 0) ++piv;
    if (piv == k) throw Error(ErrorKind::InfeasibleShape, "singular generalized Vandermonde system");
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const mpq_class f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<mpq_class> coef(k + 1);
  for (std::size_t i = 0; i < k; ++i) coef[i] = a[i][k] / a[i][i];
  coef[k] = 1;
  return coef;
}

std::vector<mpq_class> sqrt_targets(const std::vector<double>& targets) {
  std::vector<mpq_class> s;
  for (double h : targets) s.push_back(exact(std::sqrt(h)));
  return s;
}

HalfPowerPoly target_poly(const std::vector<int>& exps, const std::vector<mpq_class>& coef) {
  HalfPowerPoly p;
  for (std::size_t i = 0; i < coef.size(); ++i) p.add(exps[i], RingElem(coef[i]));
  return p;
}

double max_abs_coeff(const HalfPowerPoly& p) {
  double big = 0.0;
  for (const auto& [k, c] : p.coeffs()) big = std::max(big, std::abs(c.to_double()));
  return big;
}

// Odd-index unknowns of SwitchX: f0 odd coefficients and g odd coefficients.
struct OddModel {
  int m, n;
  std::vector<int> a_idx;  // i with 2i+1 <= m
  std::vector<int> c_idx;  // j with 2j+1 <= n
  std::vector<int> levels; // l of the h^(l+3/2) terms
  std::vector<double> moment, hat;

  OddModel(int m_, int n_) : m(m_), n(n_) {
    for (int i = 0; 2 * i + 1 <= m; ++i) a_idx.push_back(i);
    for (int j = 0; 2 * j + 1 <= n; ++j) c_idx.push_back(j);
    for (int k : design_exponents(SwitchCase::SwitchX, m, n))
      if (k % 2 == 1) levels.push_back((k - 3) / 2);
    for (int l : levels) {
      moment.push_back(half_arc_moment_factor(l).to_double());
      hat.push_back(a_hat_factor(l).to_double());
    }
  }

  std::size_t unknowns() const { return a_idx.size() + c_idx.size(); }

  Eigen::VectorXd eval(const Eigen::VectorXd& u) const {
    const auto na = static_cast<Eigen::Index>(a_idx.size());
    Eigen::VectorXd t = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(levels.size()));
    for (std::size_t r = 0; r < levels.size(); ++r) {
      const int l = levels[r];
      double conv = 0.0;
      for (std::size_t i = 0; i < a_idx.size(); ++i) {
        const int j = l - a_idx[i];
        if (j < 0 || j >= static_cast<int>(c_idx.size())) continue;
        conv += 2.0 / (j + 1) * u(static_cast<Eigen::Index>(i)) * u(na + j);
      }
      double lin = l < static_cast<int>(a_idx.size()) ? hat[r] * u(l) : 0.0;
      t(static_cast<Eigen::Index>(r)) = moment[r] * conv + lin;
    }
    return t;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const {
    const auto na = static_cast<Eigen::Index>(a_idx.size());
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(levels.size()), u.size());
    for (std::size_t r = 0; r < levels.size(); ++r) {
      const auto row = static_cast<Eigen::Index>(r);
      const int l = levels[r];
      for (std::size_t i = 0; i < a_idx.size(); ++i) {
        const int j = l - a_idx[i];
        if (j < 0 || j >= static_cast<int>(c_idx.size())) continue;
        const double w = moment[r] * 2.0 / (j + 1);
        jac(row, static_cast<Eigen::Index>(i)) += w * u(na + j);
        jac(row, na + j) += w * u(static_cast<Eigen::Index>(i));
      }
      if (l < static_cast<int>(a_idx.size())) jac(row, l) += hat[r];
    }
    return jac;
  }
};

struct NewtonOutcome {
  Eigen::VectorXd u;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

NewtonOutcome gauss_newton(const OddModel& model, const Eigen::VectorXd& rhs, Eigen::VectorXd u, int max_it,
                           double tol) {
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  NewtonOutcome out;
  Eigen::VectorXd r = model.eval(u) - rhs;
  double norm = r.norm();
  int it = 0;
  for (; it < max_it && norm > tol * scale; ++it) {
    const Eigen::MatrixXd jac = model.jacobian(u);
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-r);
    double t = 1.0;
    bool improved = false;
    for (int b = 0; b < 40; ++b, t *= 0.5) {
      Eigen::VectorXd trial = u + t * step;
      Eigen::VectorXd rt = model.eval(trial) - rhs;
      if (rt.norm() < norm) {
        u = trial;
        r = rt;
        norm = rt.norm();
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  out.u = u;
  out.residual = r.cwiseAbs().maxCoeff() / scale;
  out.iterations = it;
  return out;
}

DesignResult trivial_design(SwitchCase kase, int m, int n, const DesignOptions& opts) {
  if (m < 0 || n < 0) throw Error(ErrorKind::InvalidInput, "degrees must be non-negative");
  DesignResult res;
  res.system = LienardSystem::zero(kase, m, n);
  res.system.lambda = opts.lambda;
  res.system.eps = opts.eps;
  return res;
}

}  // namespace

std::vector<int> design_exponents(SwitchCase kase, int m, int n) {
  std::set<int> ks;
  if (kase == SwitchCase::SwitchY) {
    for (int j = 0; j <= m / 2; ++j) ks.insert(2 * j + 2);
    for (int l = 0; l <= n / 2; ++l) ks.insert(2 * l + 1);
    // endpoint products b0_{2i+1} c_{2[n/2]} reach l = i + [n/2]
    for (int i = 1; 2 * i + 1 <= n; ++i) ks.insert(2 * (i + n / 2) + 1);
  } else {
    for (int j = 0; j <= m / 2; ++j) ks.insert(2 * j + 2);
    if (m >= 1) {
      const int top_a = (m - 1) / 2;
      const int top = n >= 1 ? top_a + (n + 1) / 2 - 1 : top_a;
      for (int l = 0; l <= top; ++l) ks.insert(2 * l + 3);
    }
  }
  return {ks.begin(), ks.end()};
}

DesignResult design_case_y(int m, int n, const std::vector<double>& targets, const DesignOptions& opts) {
  if (targets.empty()) return trivial_design(SwitchCase::SwitchY, m, n, opts);
  check_targets(SwitchCase::SwitchY, m, n, targets);
  const std::vector<int> all = design_exponents(SwitchCase::SwitchY, m, n);
  const std::vector<int> exps(all.begin(), all.begin() + static_cast<long>(targets.size()) + 1);
  const std::vector<mpq_class> coef = vanishing_combination(exps, sqrt_targets(targets));

  DesignResult res;
  LienardSystem& sys = res.system;
  sys = LienardSystem::zero(SwitchCase::SwitchY, m, n);
  sys.lambda = opts.lambda;
  sys.eps = opts.eps;
  const int half_n = n / 2;
  bool needs_g = false;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const int k = exps[i];
    const RingElem q(coef[i]);
    if (k % 2 == 0) {
      const int j = (k - 2) / 2;
      sys.a1[static_cast<std::size_t>(2 * j)] = q / a_tilde_factor(SwitchCase::SwitchY, j);
    } else if ((k - 1) / 2 <= half_n) {
      const int l = (k - 1) / 2;
      sys.b1[static_cast<std::size_t>(2 * l)] = q / b_tilde_factor(l);
    } else {
      const int i_b = (k - 1) / 2 - half_n;
      sys.b0[static_cast<std::size_t>(2 * i_b + 1)] = q / b_star_factor(i_b);
      needs_g = true;
    }
  }
  // c*_{[n/2]} = 1 makes the endpoint products equal to b*_i
  if (needs_g) sys.c[static_cast<std::size_t>(2 * half_n)] = RingElem(1) / c_star_factor(half_n);
  res.target = target_poly(exps, coef);
  res.residual = 0.0;
  return res;
}

DesignResult design_case_x(int m, int n, const std::vector<double>& targets, const DesignOptions& opts) {
  if (targets.empty()) return trivial_design(SwitchCase::SwitchX, m, n, opts);
  check_targets(SwitchCase::SwitchX, m, n, targets);
  const std::vector<int> all = design_exponents(SwitchCase::SwitchX, m, n);
  const std::vector<int> exps(all.begin(), all.begin() + static_cast<long>(targets.size()) + 1);
  std::vector<mpq_class> coef = vanishing_combination(exps, sqrt_targets(targets));
  mpq_class big = 0;
  for (const auto& c : coef) big = std::max(big, mpq_class(abs(c)));
  for (auto& c : coef) c /= big;

  const OddModel model(m, n);
  OddModel decoupled_model = model;
  std::fill(decoupled_model.hat.begin(), decoupled_model.hat.end(), 0.0);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::vector<mpq_class> kappas{1, -1, 10, -10, mpq_class(1, 10), mpq_class(-1, 10)};

  NewtonOutcome best;
  mpq_class best_kappa = 1;
  int total_iterations = 0;
  const bool has_odd = !model.levels.empty() &&
                       std::any_of(exps.begin(), exps.end(), [](int k) { return k % 2 == 1; });
  if (has_odd) {
    for (const auto& kappa : kappas) {
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.levels.size()));
      for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] % 2 == 0) continue;
        const int l = (exps[i] - 3) / 2;
        const auto it = std::find(model.levels.begin(), model.levels.end(), l);
        rhs(it - model.levels.begin()) = mpq_class(kappa * coef[i]).get_d();
      }
      // first start: the decoupled problem without the half-arc terms
      Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(model.unknowns()));
      const Eigen::VectorXd decoupled = gauss_newton(decoupled_model, rhs, ones, opts.max_iterations, opts.tolerance).u;
      for (int start = 0; start < 8; ++start) {
        Eigen::VectorXd u(static_cast<Eigen::Index>(model.unknowns()));
        if (start == 0) u = decoupled;
        else
          for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = unit(rng);
        NewtonOutcome o = gauss_newton(model, rhs, u, opts.max_iterations, opts.tolerance);
        total_iterations += o.iterations;
        if (o.residual < best.residual) {
          best = o;
          best_kappa = kappa;
        }
        if (best.residual <= opts.tolerance) break;
      }
      if (best.residual <= opts.tolerance) break;
    }
    if (!(best.residual <= opts.tolerance))
      throw Error(ErrorKind::NoConvergence,
                  "odd-coefficient solve stalled at relative residual " + std::to_string(best.residual));
    // negligible unknowns would leave tiny top coefficients and far spurious zeros
    Eigen::VectorXd rhs = model.eval(best.u);
    const double big_u = best.u.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < best.u.size(); ++i) {
      if (std::abs(best.u(i)) > 1e-8 * big_u) continue;
      Eigen::VectorXd trial = best.u;
      trial(i) = 0.0;
      const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
      if ((model.eval(trial) - rhs).cwiseAbs().maxCoeff() / scale <= opts.tolerance) best.u = trial;
    }
  }

  DesignResult res;
  LienardSystem& sys = res.system;
  sys = LienardSystem::zero(SwitchCase::SwitchX, m, n);
  sys.lambda = opts.lambda;
  sys.eps = opts.eps;
  for (auto& c : coef) c *= best_kappa;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] % 2 != 0) continue;
    const int j = (exps[i] - 2) / 2;
    sys.a1[static_cast<std::size_t>(2 * j)] = RingElem(coef[i]) / a_tilde_factor(SwitchCase::SwitchX, j);
  }
  if (has_odd) {
    const auto na = static_cast<Eigen::Index>(model.a_idx.size());
    for (std::size_t i = 0; i < model.a_idx.size(); ++i)
      sys.a0[static_cast<std::size_t>(2 * model.a_idx[i] + 1)] =
          RingElem::from_double(best.u(static_cast<Eigen::Index>(i)));
    for (std::size_t j = 0; j < model.c_idx.size(); ++j)
      sys.c[static_cast<std::size_t>(2 * model.c_idx[j] + 1)] =
          RingElem::from_double(best.u(na + static_cast<Eigen::Index>(j)));
  }
  res.target = target_poly(exps, coef);
  res.iterations = total_iterations;

  const HalfPowerPoly got = case_x_m1(sys);
  double mismatch = 0.0;
  for (int k : all) mismatch = std::max(mismatch, std::abs((got.coeff(k) - res.target.coeff(k)).to_double()));
  res.residual = mismatch / max_abs_coeff(res.target);
  return res;
}

DesignResult design(SwitchCase kase, int m, int n, const std::vector<double>& targets, const DesignOptions& opts) {
  return kase == SwitchCase::SwitchY ? design_case_y(m, n, targets, opts) : design_case_x(m, n, targets, opts);
}

}  // namespace lienard

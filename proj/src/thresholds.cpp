#include "rig/thresholds.hpp"

#include <cmath>

#include "rig/errors.hpp"

namespace rig {

namespace {

// Band midpoint of the regime split: n ln n / ln ln n.  Needs n >= 3 so that
// ln ln n is positive.
double regime_band(std::uint32_t n) {
  const double ln_n = std::log(static_cast<double>(n));
  return static_cast<double>(n) * ln_n / std::log(ln_n);
}

ABranch classify(std::uint32_t n, std::uint32_t m, double eps_regime) {
  if (n < 3) throw ParameterError("a_n: n must be at least 3");
  if (!(eps_regime > 0.0 && eps_regime < 1.0))
    throw ParameterError("a_n: eps_regime must be in (0, 1)");
  const double band = regime_band(n);
  if (static_cast<double>(m) < (1.0 - eps_regime) * band) return ABranch::an_equals_1;
  if (static_cast<double>(m) > (1.0 + eps_regime) * band) return ABranch::an_formula;
  throw RegimeError("a_n: m lies in the excluded band around n ln n / ln ln n");
}

double formula_value(std::uint32_t n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("a_n: p must be in (0, 1)");
  const double np = static_cast<double>(n) * p;
  return np * std::log(static_cast<double>(n)) / std::expm1(np);
}

}  // namespace

AnValue a_n(std::uint32_t n, std::uint32_t m, double p, double eps_regime) {
  const ABranch branch = classify(n, m, eps_regime);
  if (branch == ABranch::an_equals_1) return {1.0, branch};
  return {formula_value(n, p), branch};
}

double degree_lhs(std::uint32_t n, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const double q_pow = std::exp(static_cast<double>(n - 1) * std::log1p(-p));
  return p * (1.0 - q_pow);
}

namespace {

// Bisection for degree_lhs(n, p) = target; the LHS is strictly increasing on
// (0, 1) with range (0, 1).
double bisect_lhs(std::uint32_t n, double target) {
  if (!(target > 0.0 && target < 1.0))
    throw InfeasibleError("solve_p: target outside the range of p(1-(1-p)^(n-1))");
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (degree_lhs(n, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

nlohmann::ordered_json ThresholdSpec::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["m"] = m;
  j["c"] = c;
  j["eps_regime"] = eps_regime;
  j["a_branch"] = a_branch == ABranch::an_equals_1 ? "an_equals_1" : "an_formula";
  j["a_n"] = a_value;
  j["p"] = p;
  j["residual"] = residual;
  nlohmann::ordered_json warnings = nlohmann::ordered_json::array();
  if (warn_small_m) warnings.push_back("m < ln^2 n");
  j["warnings"] = warnings;
  return j;
}

ThresholdSpec solve_p(std::uint32_t n, std::uint32_t m, double c, double eps_regime) {
  if (m < 1) throw ParameterError("solve_p: m must be positive");
  const ABranch branch = classify(n, m, eps_regime);
  const double ln_n = std::log(static_cast<double>(n));

  ThresholdSpec spec;
  spec.n = n;
  spec.m = m;
  spec.c = c;
  spec.eps_regime = eps_regime;
  spec.a_branch = branch;
  spec.warn_small_m = static_cast<double>(m) < ln_n * ln_n;

  if (branch == ABranch::an_equals_1) {
    spec.a_value = 1.0;
    spec.p = bisect_lhs(n, (ln_n + c) / static_cast<double>(m));
  } else {
    // a_n depends on p; fixed-point iteration on a_n around the bisection.
    double a = ln_n;  // np -> 0 limit of the formula
    double p = 0.0;
    for (int it = 0; it < 50; ++it) {
      const double target = (ln_n + std::log(a) + c) / static_cast<double>(m);
      const double p_next = bisect_lhs(n, target);
      const bool converged = std::abs(p_next - p) < 1e-14;
      p = p_next;
      a = formula_value(n, p);
      if (converged) break;
    }
    spec.a_value = a;
    spec.p = p;
  }

  const double rhs = (ln_n + std::log(spec.a_value) + c) / static_cast<double>(m);
  spec.residual = std::abs(degree_lhs(n, spec.p) - rhs);
  return spec;
}

double limit_min_degree_prob(double c) { return std::exp(-std::exp(-c)); }

double poisson_degree1_mean(double c) { return std::exp(-c); }

}  // namespace rig

#pragma once

#include <cstdint>

#include "json.hpp"

namespace rig {

enum class ABranch { an_equals_1, an_formula };

struct AnValue {
  double value = 1.0;
  ABranch branch = ABranch::an_equals_1;
};

// Branch selector a_n: 1 when m < (1-eps) * n ln n / ln ln n, and
// np ln n / (e^np - 1) when m > (1+eps) * the same band.  The band itself is
// excluded and raises RegimeError.  Requires n >= 3, p in (0, 1) for the
// formula branch.
AnValue a_n(std::uint32_t n, std::uint32_t m, double p, double eps_regime);

// LHS of the degree threshold equation: p(1 - (1-p)^(n-1)); strictly
// increasing in p on (0, 1) for n >= 2.
double degree_lhs(std::uint32_t n, double p);

struct ThresholdSpec {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  double c = 0.0;
  double eps_regime = 0.1;
  ABranch a_branch = ABranch::an_equals_1;
  double a_value = 1.0;
  double p = 0.0;
  double residual = 0.0;
  bool warn_small_m = false;  // m < ln^2 n
  nlohmann::ordered_json to_json() const;
};

// Solves p(1 - (1-p)^(n-1)) = (ln n + ln a_n + c) / m by bisection; in the
// formula branch an outer fixed-point iteration on a_n wraps the bisection.
// Raises InfeasibleError when no root exists in (0, 1) and RegimeError inside
// the excluded band.
ThresholdSpec solve_p(std::uint32_t n, std::uint32_t m, double c, double eps_regime = 0.1);

// Limiting probability of minimum degree >= 2: exp(-exp(-c)); the IEEE
// limits give 0 at -inf and 1 at +inf.
double limit_min_degree_prob(double c);

// Limiting mean (and variance) of the degree-1 vertex count: exp(-c).
double poisson_degree1_mean(double c);

}  // namespace rig

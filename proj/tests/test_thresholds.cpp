#include <cmath>
#include <limits>

#include "doctest.h"
#include "rig/errors.hpp"
#include "rig/rng.hpp"
#include "rig/thresholds.hpp"

using namespace rig;

namespace {

// independent fixed-count bisection used as the solve_p oracle
double bisect_oracle(std::uint32_t n, double target) {
  auto lhs = [n](double p) {
    return p * (1.0 - std::pow(1.0 - p, static_cast<double>(n - 1)));
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (lhs(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("a_n branch selection and values") {
  // n = m = 1000 sits far below the band
  const AnValue low = a_n(1000, 1000, 0.01, 0.1);
  CHECK(low.branch == ABranch::an_equals_1);
  CHECK(low.value == 1.0);

  // np -> 0 limit of the formula branch tends to ln n
  const AnValue lim = a_n(1000, 1'000'000, 1e-9, 0.1);
  CHECK(lim.branch == ABranch::an_formula);
  CHECK(lim.value == doctest::Approx(std::log(1000.0)).epsilon(1e-4));

  // direct evaluation: np = 2 gives 2 ln(1000) / (e^2 - 1)
  const AnValue hi = a_n(1000, 1'000'000, 0.002, 0.1);
  CHECK(hi.branch == ABranch::an_formula);
  CHECK(hi.value == doctest::Approx(2.1623711459156865).epsilon(1e-12));

  // the band itself is excluded (band(1000) ~ 3574)
  CHECK_THROWS_AS(a_n(1000, 3574, 0.01, 0.1), RegimeError);
  CHECK_THROWS_AS(a_n(2, 10, 0.1, 0.1), ParameterError);
}

TEST_CASE("degree_lhs is strictly increasing in p") {
  for (std::uint32_t n : {2u, 5u, 100u, 5000u}) {
    double prev = 0.0;
    for (double p = 0.01; p < 1.0; p += 0.01) {
      const double cur = degree_lhs(n, p);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("solve_p low branch against the bisection oracle") {
  const ThresholdSpec spec = solve_p(1000, 1000, 0.0);
  CHECK(spec.a_branch == ABranch::an_equals_1);
  CHECK(spec.residual <= 1e-12);
  const double target = std::log(1000.0) / 1000.0;
  CHECK(degree_lhs(1000, spec.p) == doctest::Approx(target).epsilon(1e-12));
  CHECK(spec.p == doctest::Approx(bisect_oracle(1000, target)).epsilon(1e-10));
}

TEST_CASE("solve_p formula branch round trip") {
  const ThresholdSpec spec = solve_p(1000, 5000, 0.0);
  CHECK(spec.a_branch == ABranch::an_formula);
  CHECK(spec.residual <= 1e-12);
  const double np = 1000.0 * spec.p;
  const double a = np * std::log(1000.0) / std::expm1(np);
  CHECK(a == doctest::Approx(spec.a_value).epsilon(1e-10));
  const double rhs = (std::log(1000.0) + std::log(a) + 0.0) / 5000.0;
  CHECK(degree_lhs(1000, spec.p) == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("solve_p monotone in c") {
  Rng rng(191);
  for (int it = 0; it < 100; ++it) {
    const auto n = static_cast<std::uint32_t>(100 + rng.below(5000));
    const std::uint32_t m = n;  // low branch for these sizes
    const double c = -2.0 + 4.0 * rng.canonical();
    const double c2 = c + 0.01 + rng.canonical();
    const ThresholdSpec a = solve_p(n, m, c);
    const ThresholdSpec b = solve_p(n, m, c2);
    CHECK(b.p > a.p);
    CHECK(a.residual <= 1e-12);
    CHECK(b.residual <= 1e-12);
  }
}

TEST_CASE("solve_p infeasible targets") {
  // target >= 1
  CHECK_THROWS_AS(solve_p(1000, 1000, 1000.0), InfeasibleError);
  // target <= 0
  CHECK_THROWS_AS(solve_p(1000, 1000, -10.0), InfeasibleError);
  // excluded band
  CHECK_THROWS_AS(solve_p(1000, 3574, 0.0), RegimeError);
}

TEST_CASE("solve_p warns for m below ln^2 n") {
  const ThresholdSpec spec = solve_p(1'000'000, 100, 0.0);
  CHECK(spec.warn_small_m);
  const ThresholdSpec ok = solve_p(1000, 1000, 0.0);
  CHECK_FALSE(ok.warn_small_m);
}

TEST_CASE("limit_min_degree_prob") {
  CHECK(limit_min_degree_prob(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(limit_min_degree_prob(std::numeric_limits<double>::infinity()) == 1.0);
  CHECK(limit_min_degree_prob(-std::numeric_limits<double>::infinity()) == 0.0);
  CHECK(limit_min_degree_prob(-std::log(std::log(2.0))) ==
        doctest::Approx(0.5).epsilon(1e-12));
  double prev = -1.0;
  for (double c = -5.0; c <= 5.0; c += 0.25) {
    const double cur = limit_min_degree_prob(c);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("poisson_degree1_mean and the law identity") {
  CHECK(poisson_degree1_mean(0.0) == 1.0);
  CHECK(poisson_degree1_mean(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-12));
  for (double c = -3.0; c <= 3.0; c += 0.2) {
    CHECK(limit_min_degree_prob(c) ==
          doctest::Approx(std::exp(-poisson_degree1_mean(c))).epsilon(1e-12));
  }
}

TEST_CASE("a_n is continuous in p within the formula branch") {
  double prev = a_n(1000, 1'000'000, 1e-6, 0.1).value;
  for (double p = 1e-4; p < 0.02; p += 1e-4) {
    const double cur = a_n(1000, 1'000'000, p, 0.1).value;
    CHECK(std::abs(cur - prev) < 0.5);  // no jumps on a fine grid
    prev = cur;
  }
}

TEST_CASE("solve_p specs serialise with stable keys") {
  const auto j = solve_p(1000, 1000, 0.0).to_json();
  CHECK(j.contains("p"));
  CHECK(j.contains("residual"));
  CHECK(j["a_branch"] == "an_equals_1");
}

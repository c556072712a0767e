#include <doctest.h>

#include <cmath>
#include <random>

#include "bfdr/analysis.hpp"

using namespace bfdr;
namespace num = bfdr::num;
namespace pk = bfdr::prior_kind;

namespace {

Problem normal_normal(int n = 10) {
  return mean_problem(normal_mean_family(), builtin_prior(pk::Normal{1}), 0.0, 0.05, n);
}

Problem cauchy_cauchy(int n = 10) {
  return median_problem(cauchy_location(), builtin_prior(pk::Cauchy{1}), 0.05, n);
}

}  // namespace

TEST_CASE("spiky_limits") {
  auto s = spiky_limits(0.3, 0.3, 0.5);
  CHECK(s.delta_limit_tau0 == doctest::Approx(0.5));
  CHECK(s.eps_limit_tau0 == doctest::Approx(0.5));
  CHECK(s.delta_limit_tauinf == 0.0);
  CHECK(s.eps_limit_tauinf == 0.0);
  for (double lam : {0.1, 0.4, 0.9}) CHECK(spiky_limits(0.2, 0.2, lam).delta_limit_tau0 == doctest::Approx(lam));
  s = spiky_limits(0.1, 0.9, 0.3);
  CHECK(s.delta_limit_tau0 == doctest::Approx(0.03 / 0.66).epsilon(1e-14));
  CHECK(s.delta_limit_tau0 == doctest::Approx(0.045455).epsilon(1e-5));
  CHECK(s.eps_limit_tau0 == doctest::Approx(0.7 * 0.1 / (0.07 + 0.27)).epsilon(1e-14));
  CHECK_THROWS_AS(spiky_limits(0.0, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(spiky_limits(1.0, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(spiky_limits(0.5, 1.2, 0.5), std::invalid_argument);
}

TEST_CASE("empirical_spiky_check") {
  const auto rows = empirical_spiky_check(normal_normal(), {1e-3, 1.0, 1e3});
  REQUIRE(rows.size() == 3);
  CHECK(std::fabs(rows[0].rates.delta.value - 0.5) <= 0.05);
  CHECK(std::fabs(rows[0].rates.eps.value - 0.5) <= 0.05);
  CHECK(rows[2].rates.delta.value <= 0.01);
  CHECK(rows[2].rates.eps.value <= 0.01);
  const auto direct = exact_rates(normal_normal());
  CHECK(rows[1].rates.delta.value == direct.delta.value);
  CHECK(rows[1].rates.eps.value == direct.eps.value);
  CHECK_THROWS_AS(empirical_spiky_check(normal_normal(), {1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("statistic_gap") {
  const double g0 = num::kInvSqrt2Pi;
  const auto s = statistic_gap(g0, 0.05);
  CHECK(s.c1_gap == doctest::Approx(0.0042227895900310643).epsilon(1e-12));
  const auto d = statistic_gap(2 * g0, 0.05);
  CHECK(d.c1_gap == doctest::Approx(2 * s.c1_gap).epsilon(1e-14));
  CHECK(d.c2_gap_lower == doctest::Approx(4 * s.c2_gap_lower).epsilon(1e-14));
  for (double a : {1e-6, 0.01, 0.2, 0.49}) {
    CHECK(statistic_gap(0.3, a).c1_gap > 0.0);
    CHECK(statistic_gap(0.3, a).c2_gap_lower > 0.0);
  }
  CHECK_THROWS_AS(statistic_gap(1.0, 0.0), std::invalid_argument);

  // Matches the difference of independently computed coefficient sets.
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> ut(0.1, 5.0), ua(0.001, 0.499);
  for (int i = 0; i < 100; ++i) {
    const Prior prior = builtin_prior(pk::Normal{ut(gen)});
    const double alpha = ua(gen);
    const auto mean = exp_family_coefficients(normal_mean_family(), prior, 0.0, alpha);
    const auto med = median_coefficients(normal_location(), prior, alpha, 11);
    const auto gap = statistic_gap(prior.g(0.0), alpha);
    CHECK(std::fabs(gap.c1_gap - (med.c1 - mean.c1)) <= 1e-12);
    CHECK(med.c2 - mean.c2 >= gap.c2_gap_lower - 1e-12);
  }
}

TEST_CASE("n_alpha") {
  CHECK(n_alpha(normal_normal(1), 1.0, 0.05, NAlphaMethod::exact, 200).value() <= 15);
  CHECK(n_alpha(normal_normal(1), 0.5, 0.05, NAlphaMethod::exact, 200).value() <= 8);
  CHECK(n_alpha(cauchy_cauchy(1), 1.0, 0.05, NAlphaMethod::exact, 200).value() <= 15);
  CHECK(n_alpha(cauchy_cauchy(1), 0.5, 0.05, NAlphaMethod::exact, 200).value() < 30);

  // Definition: delta at the returned n is <= alpha and above it just before.
  const int n = n_alpha(normal_normal(1), 0.7, 0.05, NAlphaMethod::exact, 200).value();
  const Problem scaled = with_prior(normal_normal(n), scale_prior(builtin_prior(pk::Normal{1}), 0.7));
  CHECK(exact_rates(scaled).delta.value <= 0.05);
  if (n > 1) CHECK(exact_rates(with_n(scaled, n - 1)).delta.value > 0.05);

  CHECK_FALSE(n_alpha(normal_normal(1), 0.3, 0.001, NAlphaMethod::exact, 3).has_value());
  CHECK_THROWS_AS(n_alpha(normal_normal(1), 1.0, 0.05, NAlphaMethod::exact, 0), std::invalid_argument);

  const auto s3 = n_alpha(normal_normal(1), 1.0, 0.05, NAlphaMethod::series3, 200);
  REQUIRE(s3.has_value());
  CHECK(std::abs(*s3 - n_alpha(normal_normal(1), 1.0, 0.05, NAlphaMethod::exact, 200).value()) <= 2);
}

TEST_CASE("n_alpha_curve is non-increasing in tau") {
  const auto grid = log_grid(0.2, 5.0, 9);
  for (const auto& base : {normal_normal(1), cauchy_cauchy(1)}) {
    const auto rows = n_alpha_curve(base, grid, 0.05, 400);
    REQUIRE(rows.size() == grid.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      REQUIRE(rows[i].exact.has_value());
      CHECK(rows[i].tau == grid[i]);
      if (i > 0) CHECK(*rows[i].exact <= *rows[i - 1].exact);
    }
  }
}

TEST_CASE("grids") {
  const auto g = default_tau_grid();
  REQUIRE(g.size() == 25);
  CHECK(g.front() == 0.2);
  CHECK(g.back() == 5.0);
  for (std::size_t i = 1; i < g.size(); ++i)
    CHECK(g[i] / g[i - 1] == doctest::Approx(std::pow(25.0, 1.0 / 24)).epsilon(1e-12));
  CHECK(log_grid(2.0, 3.0, 1) == std::vector<double>{2.0});
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(log_grid(1.0, 2.0, 0), std::invalid_argument);
}

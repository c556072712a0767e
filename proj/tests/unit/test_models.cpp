#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/gamma.hpp>

#include "bfdr/models.hpp"
#include "bfdr/numkernel.hpp"

using namespace bfdr;
namespace num = bfdr::num;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TestSetup mean_setup(double theta0, double alpha, int n) {
  return TestSetup{Statistic::mean_ump, theta0, alpha, n};
}

TestSetup median_setup(double alpha, int n) { return TestSetup{Statistic::median, 0.0, alpha, n}; }

double max_edgeworth_gap(const LocationModel& m, int n) {
  double worst = 0.0;
  for (double t = -3.0; t <= 3.0001; t += 0.01)
    worst = std::max(worst, std::fabs(median_cdf_edgeworth(m, n, t) - median_cdf_exact(m, n, t)));
  return worst;
}

}  // namespace

TEST_CASE("TestSetup validation lists every violation") {
  TestSetup bad{Statistic::mean_ump, std::nan(""), 1.5, 0};
  try {
    bad.validate();
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("alpha") != std::string::npos);
    CHECK(msg.find("n must") != std::string::npos);
    CHECK(msg.find("theta0") != std::string::npos);
  }
}

TEST_CASE("built-in exponential families reproduce their constants") {
  const auto nm = normal_mean_family();
  for (double t : {-2.0, 0.0, 1.5}) {
    CHECK(nm.mu(t) == t);
    CHECK(nm.sigma(t) == 1.0);
    CHECK(nm.rho3(t) == 0.0);
    CHECK(nm.rho4(t) == 0.0);
  }
  const auto ex = exponential_rate_family();
  CHECK(ex.theta_hi() == 0.0);
  CHECK(ex.sigma(-1.0) == 1.0);
  for (double t : {-3.0, -1.0, -0.2}) {
    CHECK(ex.rho3(t) == 2.0);
    CHECK(ex.rho4(t) == 6.0);
    CHECK(ex.mu(t) == doctest::Approx(-1.0 / t));
  }
  // mu is non-decreasing on a grid.
  double prev = -kInf;
  for (double t = -5.0; t < 0.0; t += 0.1) {
    CHECK(ex.mu(t) >= prev);
    prev = ex.mu(t);
  }
}

TEST_CASE("ump_critical_value") {
  for (int n : {1, 4, 50}) {
    CHECK(ump_critical_value(normal_mean_family(), mean_setup(0, 0.05, n)) ==
          doctest::Approx(1.6448536).epsilon(1e-7));
  }
  const auto ex = exponential_rate_family();
  CHECK(ump_critical_value(ex, mean_setup(-1, 0.05, 1)) == doctest::Approx(1.9957323).epsilon(1e-7));
  // sqrt(30)(Gamma_{0.05,30,30} - 1) from the Boost gamma quantile.
  const boost::math::gamma_distribution<double> g30(30.0, 1.0 / 30.0);
  const double ref = std::sqrt(30.0) * (boost::math::quantile(complement(g30, 0.05)) - 1.0);
  const double k30 = ump_critical_value(ex, mean_setup(-1, 0.05, 30));
  CHECK(k30 == doctest::Approx(ref).epsilon(1e-10));
  CHECK(k30 == doctest::Approx(1.7419352395093523).epsilon(1e-10));
  CHECK(std::fabs(ex.mean_statistic_sf(-1.0, 30, k30) - 0.05) <= 1e-9);
  // k tends to z_alpha.
  const double z = num::std_normal_upper_quantile(0.05);
  CHECK(std::fabs(ump_critical_value(ex, mean_setup(-1, 0.05, 40000)) - z) < 0.01);

  ExpFamilyModel::Parts nocdf;
  nocdf.mu = [](double t) { return t; };
  nocdf.sigma = [](double) { return 1.0; };
  nocdf.rho3 = nocdf.rho4 = [](double) { return 0.0; };
  CHECK_THROWS_AS(ump_critical_value(ExpFamilyModel(nocdf), mean_setup(0, 0.05, 3)), std::logic_error);
}

TEST_CASE("cornish_fisher_critical") {
  const double z = num::std_normal_upper_quantile(0.05);
  CHECK(cornish_fisher_critical(0, 0, 0.05, 7) == z);
  CHECK(cornish_fisher_critical(2, 6, 0.05, 1) == doctest::Approx(2.0171527665022595).epsilon(1e-13));
  CHECK(std::fabs(cornish_fisher_critical(2, 6, 0.05, 100000000) - z) < 1e-3);
  // Error against the exact exponential critical value shrinks like n^-3/2.
  const auto ex = exponential_rate_family();
  const double e1 = std::fabs(cornish_fisher_critical(2, 6, 0.05, 100) -
                              ump_critical_value(ex, mean_setup(-1, 0.05, 100)));
  const double e2 = std::fabs(cornish_fisher_critical(2, 6, 0.05, 400) -
                              ump_critical_value(ex, mean_setup(-1, 0.05, 400)));
  CHECK(e1 / e2 > 5.0);
  CHECK_THROWS_AS(cornish_fisher_critical(0, 0, 0.05, 0), std::invalid_argument);
}

TEST_CASE("power_mean_test") {
  const auto nm = normal_mean_family();
  const auto ex = exponential_rate_family();
  for (int n : {1, 5, 30}) {
    CHECK(std::fabs(power_mean_test(nm, 0.0, mean_setup(0, 0.05, n)) - 0.05) <= 1e-8);
    CHECK(std::fabs(power_mean_test(ex, -1.0, mean_setup(-1, 0.05, n)) - 0.05) <= 1e-8);
    CHECK(std::fabs(power_mean_test(ex, -1.0, mean_setup(-1, 0.2, n)) - 0.2) <= 1e-8);
  }
  // 1 - Phi(z - 1): high-precision oracle.
  CHECK(power_mean_test(nm, 0.5, mean_setup(0, 0.05, 4)) == doctest::Approx(0.2595110228414441).epsilon(1e-12));

  const MeanTest t(ex, mean_setup(-1, 0.05, 10));
  double prev = 0.0;
  for (double th = -4.0; th < 0.0; th += 0.05) {
    const double p = t.power(th);
    CHECK(p >= prev - 1e-15);
    CHECK(std::fabs(p + t.acceptance(th) - 1.0) <= 1e-13);
    prev = p;
  }
  CHECK(t.power(-1e-4) > 1.0 - 1e-12);
  CHECK(MeanTest(nm, mean_setup(0, 0.05, 10)).power(20.0) == 1.0);
  CHECK_FALSE(t.approximate());

  CHECK_THROWS_AS(MeanTest(ex, mean_setup(0.5, 0.05, 3)), std::invalid_argument);
  CHECK_THROWS_AS(MeanTest(nm, median_setup(0.05, 3)), std::invalid_argument);
}

TEST_CASE("models without an exact cdf fall back to Edgeworth power") {
  // Exponential family stripped of its exact cdf.
  ExpFamilyModel::Parts p;
  p.name = "exp-approx";
  p.theta_hi = 0.0;
  p.mu = p.sigma = [](double t) { return -1.0 / t; };
  p.rho3 = [](double) { return 2.0; };
  p.rho4 = [](double) { return 6.0; };
  const MeanTest approx(ExpFamilyModel(p), mean_setup(-1, 0.05, 50));
  const MeanTest exact(exponential_rate_family(), mean_setup(-1, 0.05, 50));
  CHECK(approx.approximate());
  CHECK(approx.critical_value() == cornish_fisher_critical(2, 6, 0.05, 50));
  for (double th : {-1.3, -1.0, -0.8, -0.6})
    CHECK(std::fabs(approx.power(th) - exact.power(th)) < 2e-3);
}

TEST_CASE("edgeworth_mean_cdf tracks the exact gamma cdf") {
  const auto ex = exponential_rate_family();
  double worst50 = 0, worst200 = 0;
  for (double t = -2.5; t <= 2.5; t += 0.1) {
    worst50 = std::max(worst50, std::fabs(edgeworth_mean_cdf(2, 6, 50, t) - ex.mean_statistic_cdf(-1, 50, t)));
    worst200 = std::max(worst200, std::fabs(edgeworth_mean_cdf(2, 6, 200, t) - ex.mean_statistic_cdf(-1, 200, t)));
  }
  CHECK(worst50 < 2e-3);
  CHECK(worst50 / worst200 > 5.0);
  CHECK(edgeworth_mean_cdf(0, 0, 3, 0.4) == num::std_normal_cdf(0.4));
}

TEST_CASE("location models") {
  const auto nl = normal_location();
  const auto cl = cauchy_location();
  CHECK(nl.cdf(0.0) == 0.5);
  CHECK(cl.cdf(0.0) == 0.5);
  CHECK(cl.f0() == doctest::Approx(1.0 / num::kPi));
  CHECK(cl.f0pp() == doctest::Approx(-2.0 / num::kPi));
  // f'' by central differences.
  const double h = 1e-4;
  CHECK((cl.pdf(h) - 2 * cl.pdf(0) + cl.pdf(-h)) / (h * h) == doctest::Approx(cl.f0pp()).epsilon(1e-6));
  CHECK((nl.pdf(h) - 2 * nl.pdf(0) + nl.pdf(-h)) / (h * h) == doctest::Approx(nl.f0pp()).epsilon(1e-6));

  LocationModel::Parts bad;
  bad.pdf = num::std_normal_pdf;
  bad.cdf = [](double x) { return num::std_normal_cdf(x - 0.1); };
  bad.f0 = 0.4;
  CHECK_THROWS_AS(LocationModel{bad}, std::invalid_argument);
  bad.cdf = num::std_normal_cdf;
  bad.f0 = 0.0;
  CHECK_THROWS_AS(LocationModel{bad}, std::invalid_argument);
}

TEST_CASE("median_pdf_exact") {
  const auto nl = normal_location();
  CHECK(median_pdf_exact(nl, 1, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(median_pdf_exact(nl, 3, 0.0) == doctest::Approx(0.4330127018922193).epsilon(1e-14));
  num::QuadratureConfig cfg;
  cfg.abs_tol = 1e-9;
  for (const auto& m : {normal_location(), cauchy_location()}) {
    for (int n = 1; n <= 31; ++n) {
      const auto mass = num::integrate([&](double t) { return median_pdf_exact(m, n, t); }, -kInf,
                                       kInf, cfg);
      INFO(m.name() << " n=" << n);
      CHECK(std::fabs(mass.value - 1.0) <= 1e-6);
    }
  }
  // Derivative of the cdf.
  for (int n : {4, 9}) {
    for (double t : {-1.2, 0.0, 0.8}) {
      const double d = (median_cdf_exact(nl, n, t + 1e-5) - median_cdf_exact(nl, n, t - 1e-5)) / 2e-5;
      CHECK(d == doctest::Approx(median_pdf_exact(nl, n, t)).epsilon(1e-6));
    }
  }
}

TEST_CASE("median_cdf_exact") {
  const auto nl = normal_location();
  const auto cl = cauchy_location();
  CHECK(median_cdf_exact(nl, 7, 50.0) == 1.0);
  CHECK(median_cdf_exact(cl, 7, 1e6) > 1.0 - 1e-12);
  CHECK(median_cdf_exact(nl, 7, -50.0) == 0.0);
  for (double t : {-1.0, 0.3, 2.0}) {
    CHECK(median_cdf_exact(nl, 1, t) == doctest::Approx(nl.cdf(t / (2 * nl.f0()))).epsilon(1e-14));
    CHECK(median_cdf_exact(cl, 1, t) == doctest::Approx(cl.cdf(t / (2 * cl.f0()))).epsilon(1e-14));
  }
  for (int n : {1, 3, 11, 41}) {
    CHECK(median_cdf_exact(nl, n, 0.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(median_cdf_exact(cl, n, 0.0) == doctest::Approx(0.5).epsilon(1e-13));
  }
  for (int n : {2, 10, 33}) {
    double prev = 0.0;
    for (double t = -4; t <= 4; t += 0.1) {
      const double c = median_cdf_exact(cl, n, t);
      CHECK(c >= prev);
      CHECK(std::fabs(c + median_sf_exact(cl, n, t) - 1.0) <= 1e-13);
      prev = c;
    }
  }
}

TEST_CASE("median_cdf_coefficients") {
  const auto nl = normal_location();
  const auto cl = cauchy_location();
  const auto ne = median_cdf_coefficients(nl, 20);
  CHECK(ne.parity == Parity::even);
  CHECK(ne.f11 == 0.0);
  CHECK(ne.f12 == -1.0);
  CHECK(ne.f21 == 0.0);
  CHECK(ne.f22 == doctest::Approx(0.25 - num::kPi / 12).epsilon(1e-14));
  CHECK(ne.f22 == doctest::Approx(-0.0117993).epsilon(1e-5));
  CHECK(ne.f23 == -0.25);
  CHECK(median_cdf_coefficients(nl, 20, F23Form::alternate).f23 == 0.0);
  const auto no = median_cdf_coefficients(nl, 21);
  CHECK(no.parity == Parity::odd);
  CHECK(no.f12 == 0.0);
  CHECK(no.f23 == 0.25);
  CHECK(median_cdf_coefficients(nl, 21, F23Form::alternate).f23 == 0.25);
  const auto ce = median_cdf_coefficients(cl, 8);
  CHECK(ce.f22 == doctest::Approx(0.25 - num::kPi * num::kPi / 12).epsilon(1e-14));
  CHECK(ce.f22 == doctest::Approx(-0.572467).epsilon(1e-6));
  // Skewed density: f(x) = phi(x)(1 + 0.3 x) is not a density, but the
  // coefficient algebra only needs f(0), f'(0), f''(0).
  LocationModel::Parts p;
  p.pdf = num::std_normal_pdf;
  p.cdf = num::std_normal_cdf;
  p.f0 = 0.4;
  p.f0p = 0.1;
  p.f0pp = -0.3;
  const auto sk = median_cdf_coefficients(LocationModel(p), 5);
  CHECK(sk.f11 == doctest::Approx(0.1 / (4 * 0.16)));
  CHECK(sk.f21 == doctest::Approx(-std::pow(0.1 / 0.16, 2) / 32));
  CHECK(sk.f22 == doctest::Approx(0.25 + 0.0 + -0.3 / (24 * 0.064)));
  CHECK(median_cdf_coefficients(LocationModel(p), 6).f22 ==
        doctest::Approx(0.25 + 0.5 * 0.1 / (2 * 0.16) - 0.3 / (24 * 0.064)));
}

TEST_CASE("median_cdf_edgeworth") {
  const auto nl = normal_location();
  const auto cl = cauchy_location();
  CHECK(std::fabs(median_cdf_edgeworth(nl, 100, 1.0) - median_cdf_exact(nl, 100, 1.0)) <= 0.005);
  for (int n : {5, 21})
    for (const auto& m : {nl, cl}) CHECK(median_cdf_edgeworth(m, n, 0.0) == 0.5);
  // O(n^{-3/2}) remainder: quadrupling n shrinks the worst gap by >= 2.5x.
  for (const auto& m : {nl, cl}) {
    INFO(m.name());
    CHECK(max_edgeworth_gap(m, 24) / max_edgeworth_gap(m, 96) >= 2.5);
    CHECK(max_edgeworth_gap(m, 26) / max_edgeworth_gap(m, 104) >= 2.5);
    CHECK(max_edgeworth_gap(m, 25) / max_edgeworth_gap(m, 101) >= 2.5);
    CHECK(max_edgeworth_gap(m, 27) / max_edgeworth_gap(m, 109) >= 2.5);
  }
}

TEST_CASE("power_median_test") {
  const auto nl = normal_location();
  const auto cl = cauchy_location();
  for (int n : {1, 5, 21}) {
    CHECK(power_median_test(nl, 0.0, median_setup(0.5, n)) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(power_median_test(cl, 0.0, median_setup(0.5, n)) == doctest::Approx(0.5).epsilon(1e-13));
  }
  CHECK(power_median_test(nl, 10.0, median_setup(0.05, 9)) == 1.0);
  CHECK(power_median_test(cl, 1e4, median_setup(0.05, 9)) > 1.0 - 1e-9);
  const MedianTest ed(nl, median_setup(0.05, 40), PowerMode::edgeworth);
  const MedianTest ex(nl, median_setup(0.05, 40), PowerMode::exact);
  for (double th : {-0.2, 0.0, 0.2, 0.5}) CHECK(std::fabs(ed.power(th) - ex.power(th)) < 3e-3);

  // Monte-Carlo oracle, 2e6 replicates of the median of 21 normals.
  const TestSetup s = median_setup(0.05, 21);
  const double exact = power_median_test(nl, 0.3, s);
  const MedianTest t(nl, s);
  const int reps = 2000000;
  long hits = 0;
  std::vector<double> buf(21);
  for (int r = 0; r < reps; ++r) {
    rng::Stream st(2024, 0, static_cast<std::uint64_t>(r));
    for (auto& x : buf) x = nl.sample(0.3, st);
    std::nth_element(buf.begin(), buf.begin() + 10, buf.end());
    hits += t.rejects(buf[10]);
  }
  const double phat = double(hits) / reps;
  const double se = std::sqrt(exact * (1 - exact) / reps);
  CHECK(std::fabs(phat - exact) <= 3 * se);
}

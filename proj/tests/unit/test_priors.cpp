#include <doctest.h>

#include <cmath>

#include <boost/math/distributions/cauchy.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bfdr/numkernel.hpp"
#include "bfdr/priors.hpp"

using namespace bfdr;
namespace pk = bfdr::prior_kind;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<PriorKind> all_builtins() {
  return {pk::Normal{1.0},   pk::Normal{0.3},     pk::StudentT{3.0, 1.0}, pk::StudentT{1.5, 2.0},
          pk::Cauchy{1.0},   pk::Cauchy{0.5},     pk::GammaMode1{2.0},    pk::GammaMode1{5.0},
          pk::FMode1{2, 2},  pk::FMode1{4.0, 1.5}};
}

}  // namespace

TEST_CASE("builtin priors at the boundary point") {
  const Prior n = builtin_prior(pk::Normal{1.0});
  CHECK(n.g(0) == doctest::Approx(bfdr::num::kInvSqrt2Pi).epsilon(1e-15));
  CHECK(n.g1(0) == 0.0);
  CHECK(n.g2(0) == doctest::Approx(-bfdr::num::kInvSqrt2Pi).epsilon(1e-15));
  const Prior nt = builtin_prior(pk::Normal{2.0});
  CHECK(nt.g2(0) == doctest::Approx(-bfdr::num::kInvSqrt2Pi / 8.0).epsilon(1e-15));

  const Prior c = builtin_prior(pk::Cauchy{1.0});
  CHECK(c.g(0) == doctest::Approx(1.0 / bfdr::num::kPi).epsilon(1e-15));
  CHECK(c.g1(0) == 0.0);
  CHECK(c.g2(0) == doctest::Approx(-2.0 / bfdr::num::kPi).epsilon(1e-15));

  const Prior g = builtin_prior(pk::GammaMode1{2.0});
  CHECK(g.g(1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(g.g1(1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(g.g2(1) == doctest::Approx(-std::exp(-1.0)).epsilon(1e-14));
  for (double r : {1.5, 3.0, 7.0}) {
    const Prior gr = builtin_prior(pk::GammaMode1{r});
    const double expect = std::exp(r * std::log(r - 1.0) - (r - 1.0) - std::lgamma(r));
    CHECK(gr.g(1) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(std::fabs(gr.g1(1)) < 1e-13);  // mode at 1
  }
  for (auto [r, s] : {std::pair{2.0, 2.0}, {3.0, 5.0}, {1.5, 0.7}}) {
    const Prior f = builtin_prior(pk::FMode1{r, s});
    CHECK(std::fabs(f.g1(1)) < 1e-13);
  }

  // t_m: g''(0) = -Gamma((m+3)/2) / (tau^3 sqrt(m pi) Gamma((m+2)/2)).
  for (auto [m, tau] : {std::pair{3.0, 1.0}, {5.0, 0.5}, {1.0, 2.0}}) {
    const Prior t = builtin_prior(pk::StudentT{m, tau});
    const double expect = -std::tgamma((m + 3) / 2) /
                          (tau * tau * tau * std::sqrt(m * bfdr::num::kPi) * std::tgamma((m + 2) / 2));
    CHECK(t.g2(0) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(t.g1(0) == 0.0);
  }
}

TEST_CASE("builtin densities and cdfs match Boost") {
  namespace bm = boost::math;
  for (double x : {-3.0, -0.7, 0.0, 0.4, 1.0, 2.5, 6.0}) {
    const double tau = 1.7;
    CHECK(builtin_prior(pk::Normal{tau}).g(x) ==
          doctest::Approx(bm::pdf(bm::normal_distribution<>(0, tau), x)).epsilon(1e-13));
    const Prior t = builtin_prior(pk::StudentT{4.0, tau});
    CHECK(t.g(x) == doctest::Approx(bm::pdf(bm::students_t_distribution<>(4.0), x / tau) / tau).epsilon(1e-13));
    CHECK(t.cdf(x) == doctest::Approx(bm::cdf(bm::students_t_distribution<>(4.0), x / tau)).epsilon(1e-13));
    CHECK(t.sf(x) == doctest::Approx(bm::cdf(complement(bm::students_t_distribution<>(4.0), x / tau))).epsilon(1e-12));
    const Prior c = builtin_prior(pk::Cauchy{tau});
    CHECK(c.cdf(x) == doctest::Approx(bm::cdf(bm::cauchy_distribution<>(0, tau), x)).epsilon(1e-14));
    if (x > 0) {
      const Prior g = builtin_prior(pk::GammaMode1{3.0});
      const bm::gamma_distribution<> gd(3.0, 0.5);
      CHECK(g.g(x) == doctest::Approx(bm::pdf(gd, x)).epsilon(1e-13));
      CHECK(g.cdf(x) == doctest::Approx(bm::cdf(gd, x)).epsilon(1e-13));
      // F(2r, 2s) scaled by tau_F = r(s+1)/(s(r-1)).
      const double r = 3.0, s = 2.0, tf = r * (s + 1) / (s * (r - 1));
      const Prior f = builtin_prior(pk::FMode1{r, s});
      const bm::fisher_f_distribution<> fd(2 * r, 2 * s);
      CHECK(f.g(x) == doctest::Approx(bm::pdf(fd, x / tf) / tf).epsilon(1e-12));
      CHECK(f.cdf(x) == doctest::Approx(bm::cdf(fd, x / tf)).epsilon(1e-12));
      CHECK(f.sf(x) == doctest::Approx(bm::cdf(complement(fd, x / tf))).epsilon(1e-12));
    }
  }
}

TEST_CASE("builtin normalization and derivative consistency") {
  for (const auto& k : all_builtins()) {
    const Prior p = builtin_prior(k);
    const PriorDiagnostics d = diagnose(p.parts());
    INFO(p.name());
    CHECK(d.mass_error <= 1e-6);
    CHECK(d.g1_error <= 1e-5);
    CHECK(d.g2_error <= 1e-5);
  }
}

TEST_CASE("symmetric builtins have g1(center) = 0 exactly") {
  for (const auto& k : {PriorKind{pk::Normal{0.8}}, PriorKind{pk::StudentT{2.0, 3.0}},
                        PriorKind{pk::Cauchy{4.0}}}) {
    const Prior p = builtin_prior(k);
    CHECK(p.g1(p.center()) == 0.0);
  }
}

TEST_CASE("builtin parameter domains are enforced") {
  CHECK_THROWS_AS(builtin_prior(pk::Normal{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(builtin_prior(pk::Normal{-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(builtin_prior(pk::StudentT{0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(builtin_prior(pk::Cauchy{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(builtin_prior(pk::GammaMode1{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(builtin_prior(pk::FMode1{1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(builtin_prior(pk::FMode1{2.0, 0.0}), std::invalid_argument);
}

TEST_CASE("scale_prior") {
  const Prior base = builtin_prior(pk::Normal{1.0});
  const Prior same = scale_prior(base, 1.0);
  for (double x : {-2.0, 0.0, 0.3, 1.7}) {
    CHECK(same.g(x) == base.g(x));
    CHECK(same.g2(x) == base.g2(x));
  }
  CHECK(scale_prior(base, 2.0).g(0.0) == doctest::Approx(0.1994711).epsilon(1e-7));
  for (double tau : {0.1, 10.0}) {
    const Prior s = scale_prior(base, tau);
    bfdr::num::QuadratureConfig cfg;
    cfg.map_scale = s.scale();
    CHECK(std::fabs(bfdr::num::integrate(s.parts().g, -kInf, kInf, cfg).value - 1.0) <= 1e-6);
    // Matches a directly built normal(tau), including derivatives.
    const Prior d = builtin_prior(pk::Normal{tau});
    for (double x : {-0.2, 0.05, 3.0}) {
      CHECK(s.g(x) == doctest::Approx(d.g(x)).epsilon(1e-13));
      CHECK(s.g1(x) == doctest::Approx(d.g1(x)).epsilon(1e-13));
      CHECK(s.g2(x) == doctest::Approx(d.g2(x)).epsilon(1e-13));
    }
    const PriorDiagnostics diag = diagnose(s.parts());
    CHECK(diag.g1_error <= 1e-5);
    CHECK(diag.g2_error <= 1e-5);
  }
  // Spiky and flat limits at fixed theta != 0.
  for (const auto& k : {PriorKind{pk::Normal{1.0}}, PriorKind{pk::Cauchy{1.0}}}) {
    const Prior b = builtin_prior(k);
    CHECK(scale_prior(b, 1e-3).g(1.0) < 1e-3);
    CHECK(scale_prior(b, 1e3).g(1.0) < 1e-3);
  }
  CHECK_THROWS_AS(scale_prior(base, 0.0), std::invalid_argument);
}

TEST_CASE("reflect_prior") {
  const Prior g = builtin_prior(pk::GammaMode1{2.0});
  const Prior r = reflect_prior(g);
  CHECK(r.support_hi() == 0.0);
  CHECK(r.support_lo() == -kInf);
  for (double x : {0.3, 1.0, 2.2}) {
    CHECK(r.g(-x) == g.g(x));
    CHECK(r.g1(-x) == -g.g1(x));
    CHECK(r.g2(-x) == g.g2(x));
    CHECK(r.cdf(-x) == doctest::Approx(g.sf(x)).epsilon(1e-15));
  }
  const PriorDiagnostics d = diagnose(r.parts());
  CHECK(d.mass_error <= 1e-6);
  CHECK(d.g1_error <= 1e-5);
  CHECK(d.g2_error <= 1e-5);
}

TEST_CASE("lambda_alt") {
  CHECK(lambda_alt(builtin_prior(pk::Normal{1.0}), 0.0) == 0.5);
  const Prior g = builtin_prior(pk::GammaMode1{2.0});
  CHECK(lambda_alt(g, 1.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  // Natural parameter -rate: the alternative is rate < 1.
  CHECK(lambda_alt(reflect_prior(g), -1.0) == doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(lambda_alt(reflect_prior(g), -1.0) == doctest::Approx(0.264241).epsilon(1e-6));
  // theta0 approaching support_lo drives the mass to 1.
  CHECK(lambda_alt(g, 1e-4) > 1.0 - 1e-7);
  CHECK_THROWS_AS(lambda_alt(g, 0.0), DegeneratePrior);
  CHECK_THROWS_AS(lambda_alt(g, -3.0), DegeneratePrior);
  CHECK_THROWS_AS(lambda_alt(reflect_prior(g), 0.0), DegeneratePrior);
}

TEST_CASE("custom priors: validation, unsafe skip and quadrature tail mass") {
  // Logistic density.
  Prior::Parts p;
  p.name = "logistic";
  p.g = [](double x) {
    const double e = std::exp(-std::fabs(x));
    return e / ((1 + e) * (1 + e));
  };
  p.g1 = [](double x) {
    const double e = std::exp(-x);
    return -e * (1 - e) / std::pow(1 + e, 3);
  };
  p.g2 = [](double x) {
    const double e = std::exp(-x);
    return e * (1 - 4 * e + e * e) / std::pow(1 + e, 4);
  };
  const Prior ok = Prior::custom(p);
  CHECK_FALSE(ok.has_cdf());
  CHECK(lambda_alt(ok, 0.7) == doctest::Approx(1.0 / (1.0 + std::exp(0.7))).epsilon(1e-10));

  Prior::Parts wrong_g1 = p;
  wrong_g1.g1 = [](double) { return 0.0; };
  CHECK_THROWS_AS(Prior::custom(wrong_g1), std::invalid_argument);
  CHECK_NOTHROW(Prior::custom(wrong_g1, Validation::unsafe_skip));

  Prior::Parts wrong_mass = p;
  wrong_mass.g = [g = p.g](double x) { return 2.0 * g(x); };
  CHECK_THROWS_AS(Prior::custom(wrong_mass), std::invalid_argument);

  Prior::Parts empty;
  try {
    Prior::custom(empty);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("g is missing") != std::string::npos);
    CHECK(msg.find("g2 is missing") != std::string::npos);
  }
}

TEST_CASE("samplers follow their cdfs") {
  for (const auto& k : all_builtins()) {
    const Prior p = builtin_prior(k);
    INFO(p.name());
    bfdr::rng::Stream s(11, 0, 0);
    const int n = 40000;
    const double q1 = p.center() + 0.5 * p.scale();
    const double q2 = p.center() - 0.3 * p.scale();
    int below1 = 0, below2 = 0;
    for (int i = 0; i < n; ++i) {
      const double x = p.sample(s);
      below1 += x <= q1;
      below2 += x <= q2;
    }
    const double p1 = p.cdf(q1), p2 = p.cdf(q2);
    CHECK(std::fabs(double(below1) / n - p1) <= 4.5 * std::sqrt(p1 * (1 - p1) / n) + 1e-9);
    CHECK(std::fabs(double(below2) / n - p2) <= 4.5 * std::sqrt(p2 * (1 - p2) / n) + 1e-9);
  }
}

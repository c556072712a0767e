#include "bfdr/exact.hpp"

#include <algorithm>
#include <cmath>

namespace bfdr {

namespace {

struct Domain {
  double lo, hi;
};

Domain clip(const Prior& prior, double lo, double hi) {
  return {std::max(prior.support_lo(), lo), std::min(prior.support_hi(), hi)};
}

num::IntegralValue integrate_weighted(const std::function<double(double)>& h, const Prior& prior,
                                      Domain d, const num::QuadratureConfig& cfg) {
  if (!(d.lo < d.hi)) return {};
  const std::function<double(double)> f = [&](double t) {
    const double w = prior.g(t);
    return w == 0.0 ? 0.0 : h(t) * w;
  };
  return num::integrate(f, d.lo, d.hi, cfg);
}

JointProbabilities assemble(num::IntegralValue A, num::IntegralValue At, double lam) {
  JointProbabilities j;
  j.A = A;
  j.A_tilde = At;
  j.lambda_alt = lam;
  j.B = A.value + lam - At.value;
  j.B_tilde = 1.0 - j.B;
  return j;
}

}  // namespace

JointProbabilities exact_joint(const MeanTest& test, const Prior& prior,
                               const num::QuadratureConfig& cfg_in) {
  const ExpFamilyModel& m = test.model();
  const TestSetup& s = test.setup();
  const double th0 = s.theta0;
  const double lam = lambda_alt(prior, th0);
  num::QuadratureConfig cfg = cfg_in;
  cfg.map_scale = std::min(prior.scale(), 1.0 / (m.sigma(th0) * std::sqrt(double(s.n))));
  const auto A = integrate_weighted([&](double t) { return test.power(t); }, prior,
                                    clip(prior, m.theta_lo(), th0), cfg);
  const auto At = integrate_weighted([&](double t) { return test.acceptance(t); }, prior,
                                     clip(prior, th0, m.theta_hi()), cfg);
  JointProbabilities j = assemble(A, At, lam);
  j.approximate = test.approximate();
  return j;
}

JointProbabilities exact_joint(const MedianTest& test, const Prior& prior,
                               const num::QuadratureConfig& cfg_in) {
  const TestSetup& s = test.setup();
  const double th0 = s.theta0;
  const double lam = lambda_alt(prior, th0);
  num::QuadratureConfig cfg = cfg_in;
  cfg.map_scale =
      std::min(prior.scale(), 1.0 / (2.0 * test.model().f0() * std::sqrt(double(s.n))));
  const double inf = std::numeric_limits<double>::infinity();
  const auto A = integrate_weighted([&](double t) { return test.power(t); }, prior,
                                    clip(prior, -inf, th0), cfg);
  const auto At = integrate_weighted([&](double t) { return test.acceptance(t); }, prior,
                                     clip(prior, th0, inf), cfg);
  return assemble(A, At, lam);
}

JointProbabilities exact_joint(const ExpFamilyModel& model, const Prior& prior,
                               const TestSetup& setup, const num::QuadratureConfig& cfg) {
  return exact_joint(MeanTest(model, setup), prior, cfg);
}

JointProbabilities exact_joint(const LocationModel& model, const Prior& prior,
                               const TestSetup& setup, const num::QuadratureConfig& cfg) {
  return exact_joint(MedianTest(model, setup), prior, cfg);
}

JointProbabilities exact_joint_transformed(const MeanTest& test, const Prior& prior,
                                           const num::QuadratureConfig& cfg_in) {
  const ExpFamilyModel& m = test.model();
  const TestSetup& s = test.setup();
  const double th0 = s.theta0;
  const double lam = lambda_alt(prior, th0);
  const double z = num::std_normal_upper_quantile(s.alpha);
  const double jac = 1.0 / (m.sigma(th0) * std::sqrt(double(s.n)));
  const auto to_theta = [&](double x) { return th0 + (x + z) * jac; };
  const auto to_x = [&](double t) { return (t - th0) / jac - z; };

  num::QuadratureConfig cfg = cfg_in;
  cfg.map_scale = std::min(1.0, prior.scale() / jac);
  const Domain null_side = clip(prior, m.theta_lo(), th0);
  const Domain alt_side = clip(prior, th0, m.theta_hi());

  const auto run = [&](Domain d, bool rejecting) -> num::IntegralValue {
    if (!(d.lo < d.hi)) return {};
    const std::function<double(double)> f = [&](double x) {
      const double t = to_theta(x);
      const double w = prior.g(t);
      if (w == 0.0) return 0.0;
      return (rejecting ? test.power(t) : test.acceptance(t)) * w * jac;
    };
    return num::integrate(f, to_x(d.lo), to_x(d.hi), cfg);
  };
  JointProbabilities j = assemble(run(null_side, true), run(alt_side, false), lam);
  j.approximate = test.approximate();
  return j;
}

RateResult exact_rates(const JointProbabilities& j) {
  if (!(j.B > 0.0))
    throw ZeroDenominator("exact_rates: P(reject) is 0, delta is undefined");
  if (!(j.B_tilde > 0.0))
    throw ZeroDenominator("exact_rates: P(accept) is 0, eps is undefined");
  const double A = j.A.value;
  const double At = j.A_tilde.value;
  const double eA = j.A.error_bound;
  const double eAt = j.A_tilde.error_bound;
  const double B2 = j.B * j.B;
  const double Bt2 = j.B_tilde * j.B_tilde;

  RateResult r;
  r.method = RateMethod::quadrature;
  r.approximate = j.approximate;
  const double delta = A / j.B;
  const double eps = At / j.B_tilde;
  r.delta.value = std::clamp(delta, 0.0, 1.0);
  r.delta.clamped = r.delta.value != delta;
  r.delta.error = std::fabs(j.lambda_alt - At) / B2 * eA + std::fabs(A) / B2 * eAt;
  r.eps.value = std::clamp(eps, 0.0, 1.0);
  r.eps.clamped = r.eps.value != eps;
  r.eps.error = std::fabs(1.0 - A - j.lambda_alt) / Bt2 * eAt + std::fabs(At) / Bt2 * eA;
  return r;
}

}  // namespace bfdr

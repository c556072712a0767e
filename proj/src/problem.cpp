#include "bfdr/problem.hpp"

namespace bfdr {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

MeanProblem mean_problem(ExpFamilyModel model, Prior prior, double theta0, double alpha, int n) {
  TestSetup s{Statistic::mean_ump, theta0, alpha, n};
  s.validate();
  return MeanProblem{std::move(model), std::move(prior), s};
}

MedianProblem median_problem(LocationModel model, Prior prior, double alpha, int n) {
  TestSetup s{Statistic::median, 0.0, alpha, n};
  s.validate();
  return MedianProblem{std::move(model), std::move(prior), s};
}

MeanProblem exp_rate_problem(const Prior& rate_prior, double alpha, int n) {
  return mean_problem(exponential_rate_family(), reflect_prior(rate_prior), -1.0, alpha, n);
}

const TestSetup& setup_of(const Problem& p) {
  return std::visit([](const auto& q) -> const TestSetup& { return q.setup; }, p);
}

const Prior& prior_of(const Problem& p) {
  return std::visit([](const auto& q) -> const Prior& { return q.prior; }, p);
}

Problem with_n(Problem p, int n) {
  std::visit([n](auto& q) { q.setup.n = n; }, p);
  setup_of(p).validate();
  return p;
}

Problem with_alpha(Problem p, double alpha) {
  std::visit([alpha](auto& q) { q.setup.alpha = alpha; }, p);
  setup_of(p).validate();
  return p;
}

Problem with_prior(Problem p, Prior prior) {
  std::visit([&prior](auto& q) { q.prior = std::move(prior); }, p);
  return p;
}

CoefficientSet coefficients(const Problem& p) {
  return std::visit(
      overloaded{[](const MeanProblem& q) {
                   return exp_family_coefficients(q.model, q.prior, q.setup.theta0, q.setup.alpha,
                                                  q.g2_form);
                 },
                 [](const MedianProblem& q) {
                   return median_coefficients(q.model, q.prior, q.setup.alpha, q.setup.n,
                                              q.f23_form);
                 }},
      p);
}

RateResult series_rates(const Problem& p, int order) {
  return rate_series(coefficients(p), setup_of(p).n, order);
}

JointProbabilities exact_joint(const Problem& p, const num::QuadratureConfig& cfg) {
  return std::visit(
      overloaded{[&](const MeanProblem& q) {
                   return exact_joint(MeanTest(q.model, q.setup), q.prior, cfg);
                 },
                 [&](const MedianProblem& q) {
                   return exact_joint(MedianTest(q.model, q.setup), q.prior, cfg);
                 }},
      p);
}

RateResult exact_rates(const Problem& p, const num::QuadratureConfig& cfg) {
  return exact_rates(exact_joint(p, cfg));
}

double power_at(const Problem& p, double theta) {
  return std::visit(overloaded{[&](const MeanProblem& q) {
                                 return power_mean_test(q.model, theta, q.setup);
                               },
                               [&](const MedianProblem& q) {
                                 return power_median_test(q.model, theta, q.setup);
                               }},
                    p);
}

}  // namespace bfdr

#pragma once

// A complete testing configuration (model, prior, test) for either statistic,
// with one entry point per method so callers need not branch on the statistic.

#include <variant>

#include "bfdr/exact.hpp"
#include "bfdr/expansions.hpp"

namespace bfdr {

struct MeanProblem {
  ExpFamilyModel model;
  Prior prior;  // on the natural parameter
  TestSetup setup;
  G2Form g2_form = G2Form::consistent;
};

struct MedianProblem {
  LocationModel model;
  Prior prior;
  TestSetup setup;  // theta0 must be 0
  F23Form f23_form = F23Form::primary;
};

using Problem = std::variant<MeanProblem, MedianProblem>;

MeanProblem mean_problem(ExpFamilyModel model, Prior prior, double theta0, double alpha, int n);
MedianProblem median_problem(LocationModel model, Prior prior, double alpha, int n);

/// Exponential data tested as H0: rate >= 1. `rate_prior` lives on the rate;
/// the problem is stated on the natural parameter -rate with theta0 = -1.
MeanProblem exp_rate_problem(const Prior& rate_prior, double alpha, int n);

const TestSetup& setup_of(const Problem& p);
const Prior& prior_of(const Problem& p);
Problem with_n(Problem p, int n);
Problem with_alpha(Problem p, double alpha);
Problem with_prior(Problem p, Prior prior);

CoefficientSet coefficients(const Problem& p);
RateResult series_rates(const Problem& p, int order = 3);
JointProbabilities exact_joint(const Problem& p, const num::QuadratureConfig& cfg = {});
RateResult exact_rates(const Problem& p, const num::QuadratureConfig& cfg = {});

/// Exact power of the problem's test at theta.
double power_at(const Problem& p, double theta);

}  // namespace bfdr

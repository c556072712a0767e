#pragma once

#include <stdexcept>

#include "bfdr/models.hpp"
#include "bfdr/numkernel.hpp"
#include "bfdr/priors.hpp"
#include "bfdr/rates.hpp"

namespace bfdr {

struct JointProbabilities {
  num::IntegralValue A;        // P(theta <= theta0, reject)
  num::IntegralValue A_tilde;  // P(theta > theta0, accept)
  double B = 0.0;              // P(reject) = A + lambda_alt - A_tilde
  double B_tilde = 0.0;        // 1 - B
  double lambda_alt = 0.0;
  bool approximate = false;
};

/// delta or eps has a zero denominator (nothing is ever rejected, or accepted).
class ZeroDenominator : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Joint probabilities by quadrature over theta, split at theta0. cfg.map_scale
/// is replaced by min(prior scale, 1/(sigma0 sqrt(n))) so the tan() map resolves
/// the power transition. Throws num::NonConvergence with best estimates.
JointProbabilities exact_joint(const MeanTest& test, const Prior& prior,
                               const num::QuadratureConfig& cfg = {});
JointProbabilities exact_joint(const MedianTest& test, const Prior& prior,
                               const num::QuadratureConfig& cfg = {});
JointProbabilities exact_joint(const ExpFamilyModel& model, const Prior& prior,
                               const TestSetup& setup, const num::QuadratureConfig& cfg = {});
JointProbabilities exact_joint(const LocationModel& model, const Prior& prior,
                               const TestSetup& setup, const num::QuadratureConfig& cfg = {});

/// Same quantities integrated in x = sigma0 sqrt(n)(theta - theta0) - z.
JointProbabilities exact_joint_transformed(const MeanTest& test, const Prior& prior,
                                           const num::QuadratureConfig& cfg = {});

/// delta = A/B and eps = A_tilde/B_tilde with first-order error propagation.
/// Throws ZeroDenominator when B or B_tilde is 0.
RateResult exact_rates(const JointProbabilities& joint);

}  // namespace bfdr

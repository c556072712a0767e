#pragma once

#include <array>
#include <optional>

#include "bfdr/models.hpp"
#include "bfdr/priors.hpp"
#include "bfdr/rates.hpp"

namespace bfdr {

/// Coefficients of
///   A_n       = a1/sqrt(n) + a2/n + a3/n^1.5 + ...,   A_n = P(H0, reject)
///   Atilde_n  = at1/sqrt(n) + ...,                    Atilde_n = P(H1, accept)
/// and of the re-expanded ratios delta_n (c's) and eps_n (d's).
struct CoefficientSet {
  double a1 = 0, a2 = 0, a3 = 0;
  double at1 = 0, at2 = 0, at3 = 0;
  double b1 = 0, b2 = 0, b3 = 0;
  double c1 = 0, c2 = 0, c3 = 0;
  double d1 = 0, d2 = 0, d3 = 0;
  double lambda_alt = 0.5;
  Statistic statistic = Statistic::mean_ump;
  std::optional<Parity> parity;

  std::array<double, 3> a() const { return {a1, a2, a3}; }
  std::array<double, 3> at() const { return {at1, at2, at3}; }
  std::array<double, 3> c() const { return {c1, c2, c3}; }
  std::array<double, 3> d() const { return {d1, d2, d3}; }
};

/// Fill b = at - a, then c and d from a, at and lambda_alt.
/// Throws DegeneratePrior unless 0 < lambda_alt < 1.
CoefficientSet compose(const std::array<double, 3>& a, const std::array<double, 3>& at,
                       double lambda_alt, Statistic statistic = Statistic::mean_ump,
                       std::optional<Parity> parity = std::nullopt);

/// Which second-order Edgeworth polynomial the mean-statistic coefficients use.
/// `consistent` vanishes at x = -z so the expanded power equals alpha at theta0.
/// `alternate` carries three different coefficients and is kept only to compare.
enum class G2Form { consistent, alternate };

/// Mean-statistic coefficients at theta0 with the prior on the natural parameter.
CoefficientSet exp_family_coefficients(const ExpFamilyModel& model, const Prior& prior,
                                       double theta0, double alpha,
                                       G2Form form = G2Form::consistent);

/// Median-statistic coefficients (theta0 = 0). Depends on n only through its parity.
CoefficientSet median_coefficients(const LocationModel& model, const Prior& prior, double alpha,
                                   int n, F23Form form = F23Form::primary);

/// Truncated series for delta_n and eps_n; order in {1, 2, 3}. Values outside
/// [0, 1] are clamped and flagged.
RateResult rate_series(const CoefficientSet& coeffs, int n, int order = 3);

// Polynomials in x = sigma0 sqrt(n)(theta - theta0) - z of the power expansion
//   beta(x) = Phi(x) + phi(x) g1(x)/sqrt(n) + phi(x) g2(x)/n
// and of the critical-value expansion -x + f1(x)/sqrt(n) + f2(x)/n.
double g1_poly(double x, double rho30, double z);
double g2_poly(double x, double rho30, double rho40, double z, G2Form form = G2Form::consistent);
double f1_poly(double x, double rho30, double z);
double f2_poly(double x, double rho30, double rho40, double z);

double edgeworth_power(double x, double rho30, double rho40, double z, int n,
                       G2Form form = G2Form::consistent);

}  // namespace bfdr

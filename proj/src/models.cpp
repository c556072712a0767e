#include "bfdr/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bfdr/numkernel.hpp"

namespace bfdr {

namespace {

double xlogy(double a, double x) { return a == 0.0 ? 0.0 : a * std::log(x); }

}  // namespace

void TestSetup::validate() const {
  std::vector<std::string> bad;
  if (!(alpha > 0.0 && alpha < 1.0)) bad.emplace_back("alpha must lie in (0, 1)");
  if (n < 1) bad.emplace_back("n must be >= 1");
  if (!std::isfinite(theta0)) bad.emplace_back("theta0 must be finite");
  if (bad.empty()) return;
  std::ostringstream msg;
  msg << "TestSetup:";
  for (const auto& b : bad) msg << ' ' << b << ';';
  throw std::invalid_argument(msg.str());
}

// --- exponential family ------------------------------------------------------

ExpFamilyModel::ExpFamilyModel(Parts p) : p_(std::move(p)) {
  if (!(p_.theta_lo < p_.theta_hi))
    throw std::invalid_argument("ExpFamilyModel: theta_lo must be < theta_hi");
  if (!p_.mu || !p_.sigma || !p_.rho3 || !p_.rho4)
    throw std::invalid_argument("ExpFamilyModel: mu, sigma, rho3 and rho4 are required");
}

double ExpFamilyModel::mean_statistic_cdf(double theta, int n, double t) const {
  if (!p_.mean_statistic_cdf)
    throw std::logic_error("ExpFamilyModel '" + p_.name + "' has no exact mean-statistic cdf");
  return p_.mean_statistic_cdf(theta, n, t);
}

double ExpFamilyModel::mean_statistic_sf(double theta, int n, double t) const {
  if (p_.mean_statistic_sf) return p_.mean_statistic_sf(theta, n, t);
  return 1.0 - mean_statistic_cdf(theta, n, t);
}

double ExpFamilyModel::sample(double theta, rng::Stream& s) const {
  if (!p_.sampler) throw std::logic_error("ExpFamilyModel '" + p_.name + "' has no sampler");
  return p_.sampler(theta, s);
}

ExpFamilyModel normal_mean_family() {
  ExpFamilyModel::Parts p;
  p.name = "normal-mean";
  p.mu = [](double t) { return t; };
  p.sigma = [](double) { return 1.0; };
  p.rho3 = [](double) { return 0.0; };
  p.rho4 = [](double) { return 0.0; };
  p.mean_statistic_cdf = [](double, int, double t) { return num::std_normal_cdf(t); };
  p.mean_statistic_sf = [](double, int, double t) { return num::std_normal_sf(t); };
  p.sampler = [](double theta, rng::Stream& s) { return theta + s.normal(); };
  return ExpFamilyModel(std::move(p));
}

ExpFamilyModel exponential_rate_family() {
  ExpFamilyModel::Parts p;
  p.name = "exp-rate";
  p.theta_hi = 0.0;
  p.mu = [](double t) { return -1.0 / t; };
  p.sigma = [](double t) { return -1.0 / t; };
  p.rho3 = [](double) { return 2.0; };
  p.rho4 = [](double) { return 6.0; };
  // rate * sum(X) ~ Gamma(n, 1) and the standardized mean is (rate*sum - n)/sqrt(n).
  p.mean_statistic_cdf = [](double, int n, double t) {
    const double x = n + t * std::sqrt(static_cast<double>(n));
    return x <= 0.0 ? 0.0 : num::gamma_p(n, x);
  };
  p.mean_statistic_sf = [](double, int n, double t) {
    const double x = n + t * std::sqrt(static_cast<double>(n));
    return x <= 0.0 ? 1.0 : num::gamma_q(n, x);
  };
  p.sampler = [](double theta, rng::Stream& s) { return s.exponential() / (-theta); };
  return ExpFamilyModel(std::move(p));
}

double cornish_fisher_critical(double rho30, double rho40, double alpha, int n) {
  if (n < 1) throw std::invalid_argument("cornish_fisher_critical: n must be >= 1");
  const double z = num::std_normal_upper_quantile(alpha);
  const double rn = std::sqrt(static_cast<double>(n));
  return z + (z * z - 1.0) * rho30 / (6.0 * rn) +
         ((z * z * z - 3.0 * z) * rho40 / 24.0 - (2.0 * z * z * z - 5.0 * z) * rho30 * rho30 / 36.0) /
             n;
}

double edgeworth_mean_cdf(double rho3, double rho4, int n, double t) {
  const double rn = std::sqrt(static_cast<double>(n));
  const double t2 = t * t;
  const double he2 = t2 - 1.0;
  const double he3 = t * (t2 - 3.0);
  const double he5 = t * (t2 * t2 - 10.0 * t2 + 15.0);
  const double corr = rho3 * he2 / (6.0 * rn) + (rho4 * he3 / 24.0 + rho3 * rho3 * he5 / 72.0) / n;
  return num::std_normal_cdf(t) - num::std_normal_pdf(t) * corr;
}

double ump_critical_value(const ExpFamilyModel& model, const TestSetup& setup) {
  setup.validate();
  if (!model.has_exact_cdf())
    throw std::logic_error("ump_critical_value: model '" + model.name() +
                           "' has no exact cdf; use cornish_fisher_critical");
  const double th0 = setup.theta0;
  const int n = setup.n;
  const auto f = [&](double t) { return model.mean_statistic_sf(th0, n, t) - setup.alpha; };
  const double guess =
      cornish_fisher_critical(model.rho3(th0), model.rho4(th0), setup.alpha, n);
  double lo = guess - 1.0, hi = guess + 1.0;
  for (int i = 0; i < 200 && f(lo) < 0.0; ++i) lo -= (hi - lo);
  for (int i = 0; i < 200 && f(hi) > 0.0; ++i) hi += (hi - lo);
  return num::find_root(f, lo, hi, 1e-13);
}

MeanTest::MeanTest(ExpFamilyModel model, TestSetup setup)
    : model_(std::move(model)), setup_(setup) {
  setup_.validate();
  if (setup_.statistic != Statistic::mean_ump)
    throw std::invalid_argument("MeanTest: setup.statistic must be mean_ump");
  if (!(setup_.theta0 > model_.theta_lo() && setup_.theta0 < model_.theta_hi()))
    throw std::invalid_argument("MeanTest: theta0 must be interior to the parameter interval");
  mu0_ = model_.mu(setup_.theta0);
  sigma0_ = model_.sigma(setup_.theta0);
  if (!(sigma0_ > 0.0)) throw std::invalid_argument("MeanTest: sigma(theta0) must be positive");
  if (model_.has_exact_cdf()) {
    k_ = ump_critical_value(model_, setup_);
  } else {
    k_ = cornish_fisher_critical(model_.rho3(setup_.theta0), model_.rho4(setup_.theta0),
                                 setup_.alpha, setup_.n);
    approximate_ = true;
  }
}

double MeanTest::standardized_threshold(double theta) const {
  const double rn = std::sqrt(static_cast<double>(setup_.n));
  return (k_ * sigma0_ - rn * (model_.mu(theta) - mu0_)) / model_.sigma(theta);
}

double MeanTest::power(double theta) const {
  const double t = standardized_threshold(theta);
  if (!approximate_) return model_.mean_statistic_sf(theta, setup_.n, t);
  const double c = edgeworth_mean_cdf(model_.rho3(theta), model_.rho4(theta), setup_.n, t);
  return std::clamp(1.0 - c, 0.0, 1.0);
}

double MeanTest::acceptance(double theta) const {
  const double t = standardized_threshold(theta);
  if (!approximate_) return model_.mean_statistic_cdf(theta, setup_.n, t);
  return std::clamp(edgeworth_mean_cdf(model_.rho3(theta), model_.rho4(theta), setup_.n, t), 0.0,
                    1.0);
}

bool MeanTest::rejects(double xbar) const {
  return std::sqrt(static_cast<double>(setup_.n)) * (xbar - mu0_) / sigma0_ > k_;
}

double power_mean_test(const ExpFamilyModel& model, double theta, const TestSetup& setup) {
  return MeanTest(model, setup).power(theta);
}

// --- location family ---------------------------------------------------------

LocationModel::LocationModel(Parts p) : p_(std::move(p)) {
  if (!p_.pdf || !p_.cdf) throw std::invalid_argument("LocationModel: pdf and cdf are required");
  if (!(p_.f0 > 0.0)) throw std::invalid_argument("LocationModel: f(0) must be positive");
  if (std::fabs(p_.cdf(0.0) - 0.5) > 1e-12)
    throw std::invalid_argument("LocationModel: the standard member must have median 0");
}

LocationModel normal_location() {
  LocationModel::Parts p;
  p.name = "normal-median";
  p.f0 = num::kInvSqrt2Pi;
  p.f0p = 0.0;
  p.f0pp = -num::kInvSqrt2Pi;
  p.pdf = num::std_normal_pdf;
  p.cdf = num::std_normal_cdf;
  p.sf = num::std_normal_sf;
  p.noise = [](rng::Stream& s) { return s.normal(); };
  return LocationModel(std::move(p));
}

LocationModel cauchy_location() {
  LocationModel::Parts p;
  p.name = "cauchy-median";
  p.f0 = 1.0 / num::kPi;
  p.f0p = 0.0;
  p.f0pp = -2.0 / num::kPi;
  p.pdf = [](double x) { return 1.0 / (num::kPi * (1.0 + x * x)); };
  p.cdf = [](double x) { return std::atan2(1.0, -x) / num::kPi; };
  p.sf = [](double x) { return std::atan2(1.0, x) / num::kPi; };
  p.noise = [](rng::Stream& s) { return s.cauchy(); };
  return LocationModel(std::move(p));
}

MedianCdfCoefficients median_cdf_coefficients(const LocationModel& model, int n, F23Form form) {
  if (n < 1) throw std::invalid_argument("median_cdf_coefficients: n must be >= 1");
  const double fr = (n % 2 == 0) ? 0.0 : 0.5;  // fractional part of n/2
  const double f0 = model.f0();
  const double fp = model.f0p();
  const double fpp = model.f0pp();
  MedianCdfCoefficients r;
  r.parity = (n % 2 == 0) ? Parity::even : Parity::odd;
  r.f11 = fp / (4.0 * f0 * f0);
  r.f12 = -(1.0 - 2.0 * fr);
  const double q = fp / (f0 * f0);
  r.f21 = -q * q / 32.0;
  r.f22 = 0.25 + (0.5 - fr) * fp / (2.0 * f0 * f0) + fpp / (24.0 * f0 * f0 * f0);
  if (form == F23Form::primary) {
    const double w = 1.0 - 2.0 * fr;
    r.f23 = 0.25 - 0.5 * w * w;
  } else {
    const double w = 0.5 - fr;
    r.f23 = 0.25 - w * w;
  }
  return r;
}

double median_pdf_exact(const LocationModel& model, int n, double t) {
  if (n < 1) throw std::invalid_argument("median_pdf_exact: n must be >= 1");
  const double scale = 2.0 * model.f0() * std::sqrt(static_cast<double>(n));
  const double u = t / scale;
  const double fu = model.pdf(u);
  if (!(fu > 0.0)) return 0.0;
  const int h = n / 2;
  const double lg = std::log(static_cast<double>(n)) + num::log_binomial(n - 1, h) + std::log(fu) +
                    xlogy(h, model.cdf(u)) + xlogy(n - h - 1, model.sf(u));
  return std::exp(lg) / scale;
}

double median_cdf_exact(const LocationModel& model, int n, double t) {
  if (n < 1) throw std::invalid_argument("median_cdf_exact: n must be >= 1");
  const double u = t / (2.0 * model.f0() * std::sqrt(static_cast<double>(n)));
  const int k = n / 2 + 1;
  return num::beta_inc(k, n - k + 1, model.cdf(u), model.sf(u));
}

double median_sf_exact(const LocationModel& model, int n, double t) {
  if (n < 1) throw std::invalid_argument("median_sf_exact: n must be >= 1");
  const double u = t / (2.0 * model.f0() * std::sqrt(static_cast<double>(n)));
  const int k = n / 2 + 1;
  return num::beta_inc(n - k + 1, k, model.sf(u), model.cdf(u));
}

double median_cdf_edgeworth(const LocationModel& model, int n, double t, F23Form form) {
  const MedianCdfCoefficients r = median_cdf_coefficients(model, n, form);
  const double rn = std::sqrt(static_cast<double>(n));
  const double t2 = t * t;
  const double r1 = r.f11 * t2 + r.f12;
  const double r2 = ((r.f21 * t2 + r.f22) * t2 + r.f23) * t;
  return num::std_normal_cdf(t) + num::std_normal_pdf(t) * (r1 / rn + r2 / n);
}

MedianTest::MedianTest(LocationModel model, TestSetup setup, PowerMode mode, F23Form form)
    : model_(std::move(model)), setup_(setup), mode_(mode), form_(form) {
  setup_.validate();
  if (setup_.statistic != Statistic::median)
    throw std::invalid_argument("MedianTest: setup.statistic must be median");
  z_ = num::std_normal_upper_quantile(setup_.alpha);
  scale_ = 2.0 * model_.f0() * std::sqrt(static_cast<double>(setup_.n));
}

double MedianTest::threshold(double theta) const {
  return z_ - scale_ * (theta - setup_.theta0);
}

double MedianTest::power(double theta) const {
  const double t = threshold(theta);
  if (mode_ == PowerMode::exact) return median_sf_exact(model_, setup_.n, t);
  return 1.0 - median_cdf_edgeworth(model_, setup_.n, t, form_);
}

double MedianTest::acceptance(double theta) const {
  const double t = threshold(theta);
  if (mode_ == PowerMode::exact) return median_cdf_exact(model_, setup_.n, t);
  return median_cdf_edgeworth(model_, setup_.n, t, form_);
}

bool MedianTest::rejects(double median) const {
  return scale_ * (median - setup_.theta0) > z_;
}

double power_median_test(const LocationModel& model, double theta, const TestSetup& setup,
                         PowerMode mode) {
  return MedianTest(model, setup, mode).power(theta);
}

}  // namespace bfdr

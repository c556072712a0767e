#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "bfdr/rng.hpp"

namespace bfdr {

enum class Statistic { mean_ump, median };

/// H0: theta <= theta0 against H1: theta > theta0 at level alpha with n observations.
struct TestSetup {
  Statistic statistic = Statistic::mean_ump;
  double theta0 = 0.0;
  double alpha = 0.05;
  int n = 1;

  /// Throws std::invalid_argument listing every violated invariant.
  void validate() const;
};

/// One-parameter exponential family in its natural parameter.
class ExpFamilyModel {
 public:
  using ThetaFn = std::function<double(double)>;
  /// (theta, n, t) -> probability for the standardized mean sqrt(n)(Xbar - mu)/sigma.
  using StatFn = std::function<double(double, int, double)>;

  struct Parts {
    std::string name;
    double theta_lo = -std::numeric_limits<double>::infinity();
    double theta_hi = std::numeric_limits<double>::infinity();
    ThetaFn mu, sigma, rho3, rho4;
    StatFn mean_statistic_cdf;  // optional
    StatFn mean_statistic_sf;   // optional; 1 - cdf when absent
    std::function<double(double, rng::Stream&)> sampler;  // one observation
  };

  explicit ExpFamilyModel(Parts p);

  const std::string& name() const { return p_.name; }
  double theta_lo() const { return p_.theta_lo; }
  double theta_hi() const { return p_.theta_hi; }
  double mu(double t) const { return p_.mu(t); }
  double sigma(double t) const { return p_.sigma(t); }
  double rho3(double t) const { return p_.rho3(t); }
  double rho4(double t) const { return p_.rho4(t); }

  bool has_exact_cdf() const { return static_cast<bool>(p_.mean_statistic_cdf); }
  double mean_statistic_cdf(double theta, int n, double t) const;
  double mean_statistic_sf(double theta, int n, double t) const;

  bool has_sampler() const { return static_cast<bool>(p_.sampler); }
  double sample(double theta, rng::Stream& s) const;

 private:
  Parts p_;
};

/// N(theta, 1) observations.
ExpFamilyModel normal_mean_family();
/// Exponential observations in natural form: theta = -rate, theta in (-inf, 0).
ExpFamilyModel exponential_rate_family();

/// Location family f(x - theta) whose standard member has median 0.
class LocationModel {
 public:
  struct Parts {
    std::string name;
    double f0 = 0.0, f0p = 0.0, f0pp = 0.0;
    std::function<double(double)> pdf, cdf, sf;
    std::function<double(rng::Stream&)> noise;  // draw from the standard member
  };

  /// Checks f0 > 0 and cdf(0) = 1/2.
  explicit LocationModel(Parts p);

  const std::string& name() const { return p_.name; }
  double f0() const { return p_.f0; }
  double f0p() const { return p_.f0p; }
  double f0pp() const { return p_.f0pp; }
  double pdf(double x) const { return p_.pdf(x); }
  double cdf(double x) const { return p_.cdf(x); }
  double sf(double x) const { return p_.sf ? p_.sf(x) : 1.0 - p_.cdf(x); }
  double sample(double theta, rng::Stream& s) const { return theta + p_.noise(s); }

 private:
  Parts p_;
};

LocationModel normal_location();
LocationModel cauchy_location();

// --- mean statistic ----------------------------------------------------------

/// k with P_theta0(sqrt(n)(Xbar - mu0)/sigma0 > k) = alpha, from the exact CDF.
/// Throws std::logic_error when the model has no exact CDF.
double ump_critical_value(const ExpFamilyModel& model, const TestSetup& setup);

double cornish_fisher_critical(double rho30, double rho40, double alpha, int n);

/// Two-term Edgeworth approximation of P(sqrt(n)(Xbar - mu)/sigma <= t).
double edgeworth_mean_cdf(double rho3, double rho4, int n, double t);

/// The UMP test with its critical value computed once.
class MeanTest {
 public:
  MeanTest(ExpFamilyModel model, TestSetup setup);

  double critical_value() const { return k_; }
  /// True when k and the power come from Edgeworth/Cornish-Fisher approximations.
  bool approximate() const { return approximate_; }
  double power(double theta) const;
  /// 1 - power, computed without cancellation where the model allows.
  double acceptance(double theta) const;
  /// Decision for one sample mean.
  bool rejects(double xbar) const;

  const ExpFamilyModel& model() const { return model_; }
  const TestSetup& setup() const { return setup_; }

 private:
  double standardized_threshold(double theta) const;

  ExpFamilyModel model_;
  TestSetup setup_;
  double k_ = 0.0;
  double mu0_ = 0.0, sigma0_ = 1.0;
  bool approximate_ = false;
};

double power_mean_test(const ExpFamilyModel& model, double theta, const TestSetup& setup);

// --- median statistic --------------------------------------------------------

enum class Parity { even, odd };

/// Which closed form of f23 is used for even n (odd n agrees in both).
enum class F23Form { primary, alternate };

struct MedianCdfCoefficients {
  double f11 = 0.0, f12 = 0.0, f21 = 0.0, f22 = 0.0, f23 = 0.0;
  Parity parity = Parity::odd;
};

MedianCdfCoefficients median_cdf_coefficients(const LocationModel& model, int n,
                                     F23Form form = F23Form::primary);

/// Density of 2 f(0) sqrt(n) (T_n - theta), T_n = X_(floor(n/2)+1).
double median_pdf_exact(const LocationModel& model, int n, double t);
double median_cdf_exact(const LocationModel& model, int n, double t);
double median_sf_exact(const LocationModel& model, int n, double t);
double median_cdf_edgeworth(const LocationModel& model, int n, double t,
                            F23Form form = F23Form::primary);

enum class PowerMode { exact, edgeworth };

class MedianTest {
 public:
  MedianTest(LocationModel model, TestSetup setup, PowerMode mode = PowerMode::exact,
             F23Form form = F23Form::primary);

  double power(double theta) const;
  double acceptance(double theta) const;
  /// Decision for one sample median.
  bool rejects(double median) const;

  const LocationModel& model() const { return model_; }
  const TestSetup& setup() const { return setup_; }

 private:
  double threshold(double theta) const;

  LocationModel model_;
  TestSetup setup_;
  PowerMode mode_;
  F23Form form_;
  double z_ = 0.0;
  double scale_ = 1.0;  // 2 f(0) sqrt(n)
};

double power_median_test(const LocationModel& model, double theta, const TestSetup& setup,
                         PowerMode mode = PowerMode::exact);

}  // namespace bfdr

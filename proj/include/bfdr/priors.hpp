#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>

#include "bfdr/rng.hpp"

namespace bfdr {

using RealFn = std::function<double(double)>;

/// Prior mass on one side of the split point is 0 or 1.
class DegeneratePrior : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Validation { check, unsafe_skip };

class Prior {
 public:
  struct Parts {
    std::string name = "custom";
    RealFn g, g1, g2;
    double support_lo = -std::numeric_limits<double>::infinity();
    double support_hi = std::numeric_limits<double>::infinity();
    RealFn cdf;  // optional
    RealFn sf;   // optional; defaults to 1 - cdf
    std::function<double(rng::Stream&)> sampler;  // optional
    /// Typical location and spread; used for quadrature maps and validation grids.
    double center = 0.0;
    double scale = 1.0;
  };

  /// Build a prior from callables. With Validation::check the density must
  /// integrate to 1 within 1e-6 and g1, g2 must agree with central differences
  /// of g; a violation throws std::invalid_argument.
  static Prior custom(Parts parts, Validation validation = Validation::check);

  double g(double theta) const;
  double g1(double theta) const;
  double g2(double theta) const;
  double support_lo() const { return p_.support_lo; }
  double support_hi() const { return p_.support_hi; }
  double center() const { return p_.center; }
  double scale() const { return p_.scale; }
  const std::string& name() const { return p_.name; }

  bool has_cdf() const { return static_cast<bool>(p_.cdf); }
  double cdf(double theta) const;
  double sf(double theta) const;

  bool has_sampler() const { return static_cast<bool>(p_.sampler); }
  double sample(rng::Stream& s) const;

  const Parts& parts() const { return p_; }

 private:
  explicit Prior(Parts p) : p_(std::move(p)) {}
  Parts p_;
  friend Prior make_prior_unchecked(Parts);
};

/// Skips validation; for built-ins whose closed forms are tested directly.
Prior make_prior_unchecked(Prior::Parts parts);

/// Maximum normalized disagreement between g1/g2 and central differences of g,
/// plus |integral - 1|. Used by Prior::custom and by tests.
struct PriorDiagnostics {
  double mass_error = 0.0;
  double g1_error = 0.0;
  double g2_error = 0.0;
};
PriorDiagnostics diagnose(const Prior::Parts& parts);

namespace prior_kind {
struct Normal { double tau = 1.0; };
struct StudentT { double m = 1.0; double tau = 1.0; };
struct Cauchy { double tau = 1.0; };
/// Gamma(r, s = r - 1) on the rate scale; mode at 1.
struct GammaMode1 { double r = 2.0; };
/// F with 2r and 2s degrees of freedom, scaled so its mode sits at 1.
struct FMode1 { double r = 2.0; double s = 2.0; };
}  // namespace prior_kind

using PriorKind = std::variant<prior_kind::Normal, prior_kind::StudentT, prior_kind::Cauchy,
                               prior_kind::GammaMode1, prior_kind::FMode1>;

/// Throws std::invalid_argument outside the parameter domain.
Prior builtin_prior(const PriorKind& kind);

/// g_tau(theta) = g(theta / tau) / tau.
Prior scale_prior(const Prior& base, double tau);

/// Law of -theta.
Prior reflect_prior(const Prior& base);

/// P(theta > theta0). Throws DegeneratePrior when the result is 0 or 1.
double lambda_alt(const Prior& prior, double theta0);

}  // namespace bfdr

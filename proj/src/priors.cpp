#include "bfdr/priors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "bfdr/numkernel.hpp"

namespace bfdr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Central-difference probe points, kept clear of the support edges.
std::vector<double> probe_points(const Prior::Parts& p, double margin) {
  std::vector<double> pts;
  for (double k : {-2.0, -1.0, -0.5, -0.1, 0.0, 0.3, 0.5, 1.0, 2.0}) {
    const double t = p.center + k * p.scale;
    if (t - margin > p.support_lo && t + margin < p.support_hi) pts.push_back(t);
  }
  return pts;
}

}  // namespace

PriorDiagnostics diagnose(const Prior::Parts& p) {
  PriorDiagnostics d;
  num::QuadratureConfig cfg;
  cfg.abs_tol = 1e-9;
  cfg.map_scale = p.scale;
  double mass = 0.0;
  if (std::isinf(p.support_lo) && std::isinf(p.support_hi)) {
    // Split at the center so the tan() maps stay anchored on the bulk.
    mass = num::integrate(p.g, -kInf, p.center, cfg).value +
           num::integrate(p.g, p.center, kInf, cfg).value;
  } else {
    mass = num::integrate(p.g, p.support_lo, p.support_hi, cfg).value;
  }
  d.mass_error = std::fabs(mass - 1.0);

  const double s = p.scale;
  const double norm = std::max(1.0, std::fabs(p.g(p.center)) * s);
  const double h1 = 1e-4 * s;
  const double h2 = 1e-3 * s;
  for (double t : probe_points(p, 10.0 * h2)) {
    const double fd1 = (p.g(t + h1) - p.g(t - h1)) / (2.0 * h1);
    const double fd2 = (p.g(t + h2) - 2.0 * p.g(t) + p.g(t - h2)) / (h2 * h2);
    d.g1_error = std::max(d.g1_error, std::fabs(fd1 - p.g1(t)) * s * s / norm);
    d.g2_error = std::max(d.g2_error, std::fabs(fd2 - p.g2(t)) * s * s * s / norm);
  }
  return d;
}

Prior make_prior_unchecked(Prior::Parts parts) { return Prior(std::move(parts)); }

Prior Prior::custom(Parts parts, Validation validation) {
  std::vector<std::string> problems;
  if (!parts.g) problems.emplace_back("g is missing");
  if (!parts.g1) problems.emplace_back("g1 is missing");
  if (!parts.g2) problems.emplace_back("g2 is missing");
  if (!(parts.support_lo < parts.support_hi)) problems.emplace_back("support_lo must be < support_hi");
  if (!(parts.scale > 0.0)) problems.emplace_back("scale must be positive");
  if (problems.empty() && validation == Validation::check) {
    const PriorDiagnostics d = diagnose(parts);
    if (!(d.mass_error <= 1e-6)) problems.emplace_back("density does not integrate to 1");
    if (!(d.g1_error <= 1e-5)) problems.emplace_back("g1 disagrees with finite differences of g");
    if (!(d.g2_error <= 1e-5)) problems.emplace_back("g2 disagrees with finite differences of g");
  }
  if (!problems.empty()) {
    std::ostringstream msg;
    msg << "Prior::custom:";
    for (const auto& s : problems) msg << ' ' << s << ';';
    throw std::invalid_argument(msg.str());
  }
  return Prior(std::move(parts));
}

double Prior::g(double t) const { return p_.g(t); }
double Prior::g1(double t) const { return p_.g1(t); }
double Prior::g2(double t) const { return p_.g2(t); }

double Prior::cdf(double t) const {
  if (!p_.cdf) throw std::logic_error("Prior '" + p_.name + "' has no closed-form cdf");
  return p_.cdf(t);
}

double Prior::sf(double t) const {
  if (p_.sf) return p_.sf(t);
  return 1.0 - cdf(t);
}

double Prior::sample(rng::Stream& s) const {
  if (!p_.sampler) throw std::logic_error("Prior '" + p_.name + "' has no sampler");
  return p_.sampler(s);
}

namespace {

Prior::Parts normal_parts(double tau) {
  require(tau > 0.0 && std::isfinite(tau), "normal prior: tau must be positive");
  Prior::Parts p;
  p.name = "normal";
  p.g = [tau](double t) { return num::std_normal_pdf(t / tau) / tau; };
  p.g1 = [tau](double t) {
    const double y = t / tau;
    return -y / tau * num::std_normal_pdf(y) / tau;
  };
  p.g2 = [tau](double t) {
    const double y = t / tau;
    return (y * y - 1.0) / (tau * tau) * num::std_normal_pdf(y) / tau;
  };
  p.cdf = [tau](double t) { return num::std_normal_cdf(t / tau); };
  p.sf = [tau](double t) { return num::std_normal_sf(t / tau); };
  p.sampler = [tau](rng::Stream& s) { return tau * s.normal(); };
  p.scale = tau;
  return p;
}

Prior::Parts student_parts(double m, double tau) {
  require(m > 0.0 && std::isfinite(m), "student_t prior: m must be positive");
  require(tau > 0.0 && std::isfinite(tau), "student_t prior: tau must be positive");
  const double logc = std::lgamma(0.5 * (m + 1.0)) - std::lgamma(0.5 * m) -
                      0.5 * std::log(m * num::kPi) - std::log(tau);
  Prior::Parts p;
  p.name = "student_t";
  const auto dens = [m, logc, tau](double t) {
    const double y = t / tau;
    return std::exp(logc - 0.5 * (m + 1.0) * std::log1p(y * y / m));
  };
  // First and second derivatives of log g.
  const auto l1 = [m, tau](double t) {
    const double y = t / tau;
    return -(m + 1.0) * y / (m + y * y) / tau;
  };
  const auto l2 = [m, tau](double t) {
    const double y = t / tau;
    const double w = m + y * y;
    return -(m + 1.0) * (m - y * y) / (w * w) / (tau * tau);
  };
  p.g = dens;
  p.g1 = [dens, l1](double t) { return dens(t) * l1(t); };
  p.g2 = [dens, l1, l2](double t) {
    const double a = l1(t);
    return dens(t) * (a * a + l2(t));
  };
  // Lower tail of t_m at y <= 0 is I_{m/(m+y^2)}(m/2, 1/2) / 2.
  const auto lower = [m, tau](double t) {
    const double y = t / tau;
    const double x = m / (m + y * y);
    const double xc = y * y / (m + y * y);
    const double half_tail = 0.5 * num::beta_inc(0.5 * m, 0.5, x, xc);
    return y <= 0.0 ? half_tail : 1.0 - half_tail;
  };
  p.cdf = lower;
  p.sf = [lower](double t) { return lower(-t); };
  p.sampler = [m, tau](rng::Stream& s) {
    const double z = s.normal();
    const double chi2 = 2.0 * s.gamma(0.5 * m);
    return tau * z / std::sqrt(chi2 / m);
  };
  p.scale = tau;
  return p;
}

Prior::Parts cauchy_parts(double tau) {
  require(tau > 0.0 && std::isfinite(tau), "cauchy prior: tau must be positive");
  Prior::Parts p;
  p.name = "cauchy";
  p.g = [tau](double t) {
    const double y = t / tau;
    return 1.0 / (num::kPi * tau * (1.0 + y * y));
  };
  p.g1 = [tau](double t) {
    const double y = t / tau;
    const double w = 1.0 + y * y;
    return -2.0 * y / (num::kPi * tau * tau * w * w);
  };
  p.g2 = [tau](double t) {
    const double y = t / tau;
    const double w = 1.0 + y * y;
    return (6.0 * y * y - 2.0) / (num::kPi * tau * tau * tau * w * w * w);
  };
  p.cdf = [tau](double t) { return std::atan2(1.0, -t / tau) / num::kPi; };
  p.sf = [tau](double t) { return std::atan2(1.0, t / tau) / num::kPi; };
  p.sampler = [tau](rng::Stream& s) { return tau * s.cauchy(); };
  p.scale = tau;
  return p;
}

Prior::Parts gamma_mode1_parts(double r) {
  require(r > 1.0 && std::isfinite(r), "gamma_mode1 prior: r must exceed 1");
  const double s = r - 1.0;
  const double logc = r * std::log(s) - std::lgamma(r);
  Prior::Parts p;
  p.name = "gamma_mode1";
  const auto dens = [r, s, logc](double t) {
    if (!(t > 0.0)) return 0.0;
    return std::exp(logc + (r - 1.0) * std::log(t) - s * t);
  };
  p.g = dens;
  p.g1 = [dens, r, s](double t) {
    if (!(t > 0.0)) return 0.0;
    return dens(t) * ((r - 1.0) / t - s);
  };
  p.g2 = [dens, r, s](double t) {
    if (!(t > 0.0)) return 0.0;
    const double a = (r - 1.0) / t - s;
    return dens(t) * (a * a - (r - 1.0) / (t * t));
  };
  p.support_lo = 0.0;
  p.cdf = [r, s](double t) { return t <= 0.0 ? 0.0 : num::gamma_p(r, s * t); };
  p.sf = [r, s](double t) { return t <= 0.0 ? 1.0 : num::gamma_q(r, s * t); };
  p.sampler = [r, s](rng::Stream& st) { return st.gamma(r) / s; };
  p.center = 1.0;
  p.scale = std::sqrt(r) / s;
  return p;
}

Prior::Parts f_mode1_parts(double r, double s) {
  require(r > 1.0 && std::isfinite(r), "f_mode1 prior: r must exceed 1");
  require(s > 0.0 && std::isfinite(s), "f_mode1 prior: s must be positive");
  const double tau_f = r * (s + 1.0) / (s * (r - 1.0));
  const double k = r / (s * tau_f);
  const double logc = r * std::log(k) - (std::lgamma(r) + std::lgamma(s) - std::lgamma(r + s));
  Prior::Parts p;
  p.name = "f_mode1";
  const auto dens = [r, s, k, logc](double t) {
    if (!(t > 0.0)) return 0.0;
    return std::exp(logc + (r - 1.0) * std::log(t) - (r + s) * std::log1p(k * t));
  };
  p.g = dens;
  p.g1 = [dens, r, s, k](double t) {
    if (!(t > 0.0)) return 0.0;
    return dens(t) * ((r - 1.0) / t - (r + s) * k / (1.0 + k * t));
  };
  p.g2 = [dens, r, s, k](double t) {
    if (!(t > 0.0)) return 0.0;
    const double a = (r - 1.0) / t - (r + s) * k / (1.0 + k * t);
    const double q = k / (1.0 + k * t);
    return dens(t) * (a * a - (r - 1.0) / (t * t) + (r + s) * q * q);
  };
  p.support_lo = 0.0;
  p.cdf = [r, s, k](double t) {
    if (t <= 0.0) return 0.0;
    const double q = k * t;
    return num::beta_inc(r, s, q / (1.0 + q), 1.0 / (1.0 + q));
  };
  p.sf = [r, s, k](double t) {
    if (t <= 0.0) return 1.0;
    const double q = k * t;
    return num::beta_inc(s, r, 1.0 / (1.0 + q), q / (1.0 + q));
  };
  p.sampler = [r, s, tau_f](rng::Stream& st) {
    return tau_f * (st.gamma(r) / r) / (st.gamma(s) / s);
  };
  p.center = 1.0;
  p.scale = 1.0;
  return p;
}

}  // namespace

Prior builtin_prior(const PriorKind& kind) {
  using namespace prior_kind;
  const Prior::Parts parts = std::visit(
      [](const auto& k) -> Prior::Parts {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Normal>) return normal_parts(k.tau);
        else if constexpr (std::is_same_v<K, StudentT>) return student_parts(k.m, k.tau);
        else if constexpr (std::is_same_v<K, Cauchy>) return cauchy_parts(k.tau);
        else if constexpr (std::is_same_v<K, GammaMode1>) return gamma_mode1_parts(k.r);
        else return f_mode1_parts(k.r, k.s);
      },
      kind);
  return make_prior_unchecked(parts);
}

Prior scale_prior(const Prior& base, double tau) {
  require(tau > 0.0 && std::isfinite(tau), "scale_prior: tau must be positive");
  if (tau == 1.0) return base;
  const Prior::Parts& b = base.parts();
  Prior::Parts p;
  p.name = b.name;
  p.g = [b, tau](double t) { return b.g(t / tau) / tau; };
  p.g1 = [b, tau](double t) { return b.g1(t / tau) / (tau * tau); };
  p.g2 = [b, tau](double t) { return b.g2(t / tau) / (tau * tau * tau); };
  p.support_lo = b.support_lo * tau;
  p.support_hi = b.support_hi * tau;
  if (b.cdf) p.cdf = [b, tau](double t) { return b.cdf(t / tau); };
  if (b.sf) p.sf = [b, tau](double t) { return b.sf(t / tau); };
  if (b.sampler) p.sampler = [b, tau](rng::Stream& s) { return tau * b.sampler(s); };
  p.center = b.center * tau;
  p.scale = b.scale * tau;
  return make_prior_unchecked(std::move(p));
}

Prior reflect_prior(const Prior& base) {
  const Prior::Parts& b = base.parts();
  Prior::Parts p;
  p.name = b.name;
  p.g = [b](double t) { return b.g(-t); };
  p.g1 = [b](double t) { return -b.g1(-t); };
  p.g2 = [b](double t) { return b.g2(-t); };
  p.support_lo = -b.support_hi;
  p.support_hi = -b.support_lo;
  if (b.cdf) {
    // P(-X <= t) = P(X >= -t); continuous laws only.
    const Prior pb = base;
    p.cdf = [pb](double t) { return pb.sf(-t); };
    p.sf = [pb](double t) { return pb.cdf(-t); };
  }
  if (b.sampler) p.sampler = [b](rng::Stream& s) { return -b.sampler(s); };
  p.center = -b.center;
  p.scale = b.scale;
  return make_prior_unchecked(std::move(p));
}

double lambda_alt(const Prior& prior, double theta0) {
  if (std::isnan(theta0)) throw std::invalid_argument("lambda_alt: theta0 is NaN");
  double lam;
  if (theta0 <= prior.support_lo()) {
    lam = 1.0;
  } else if (theta0 >= prior.support_hi()) {
    lam = 0.0;
  } else if (prior.has_cdf()) {
    lam = prior.sf(theta0);
  } else {
    num::QuadratureConfig cfg;
    cfg.abs_tol = 1e-12;
    cfg.map_scale = prior.scale();
    const double upper = num::integrate(prior.parts().g, theta0, prior.support_hi(), cfg).value;
    lam = std::clamp(upper, 0.0, 1.0);
  }
  if (!(lam > 0.0 && lam < 1.0)) {
    std::ostringstream msg;
    msg << "lambda_alt: prior mass above theta0 = " << theta0 << " is " << lam
        << "; both hypotheses need positive mass";
    throw DegeneratePrior(msg.str());
  }
  return lam;
}

}  // namespace bfdr

#include "bfdr/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bfdr/numkernel.hpp"

namespace bfdr {

CoefficientSet compose(const std::array<double, 3>& a, const std::array<double, 3>& at,
                       double lam, Statistic statistic, std::optional<Parity> parity) {
  if (!(lam > 0.0 && lam < 1.0)) {
    std::ostringstream msg;
    msg << "compose: lambda_alt = " << lam << " must lie strictly inside (0, 1)";
    throw DegeneratePrior(msg.str());
  }
  CoefficientSet s;
  s.a1 = a[0];
  s.a2 = a[1];
  s.a3 = a[2];
  s.at1 = at[0];
  s.at2 = at[1];
  s.at3 = at[2];
  s.b1 = at[0] - a[0];
  s.b2 = at[1] - a[1];
  s.b3 = at[2] - a[2];
  s.lambda_alt = lam;
  s.statistic = statistic;
  s.parity = parity;

  // delta = A / (lam + A - At) = A / (lam - b(n)), expanded in 1/sqrt(n).
  s.c1 = s.a1 / lam;
  s.c2 = s.a1 * s.b1 / (lam * lam) + s.a2 / lam;
  s.c3 = s.a3 / lam + (s.a1 * s.b2 + s.a2 * s.b1) / (lam * lam) +
         s.a1 * s.b1 * s.b1 / (lam * lam * lam);

  // eps = At / (1 - lam + b(n)).
  const double l = 1.0 - lam;
  s.d1 = s.at1 / l;
  s.d2 = s.at2 / l - s.at1 * s.b1 / (l * l);
  s.d3 = s.at3 / l - (s.at2 * s.b1 + s.at1 * s.b2) / (l * l) +
         s.at1 * s.b1 * s.b1 / (l * l * l);
  return s;
}

CoefficientSet exp_family_coefficients(const ExpFamilyModel& model, const Prior& prior,
                                       double theta0, double alpha, G2Form form) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("exp_family_coefficients: alpha must lie in (0, 1)");
  const double s0 = model.sigma(theta0);
  if (!(s0 > 0.0)) throw std::invalid_argument("exp_family_coefficients: sigma(theta0) <= 0");
  const double r3 = model.rho3(theta0);
  const double r4 = model.rho4(theta0);
  const double g0 = prior.g(theta0);
  const double g1 = prior.g1(theta0);
  const double g2 = prior.g2(theta0);
  const double lam = lambda_alt(prior, theta0);

  const double z = num::std_normal_upper_quantile(alpha);
  const double p = num::std_normal_pdf(z);
  const double om = 1.0 - alpha;
  const double z2 = z * z;
  const double z3 = z2 * z;
  const double z4 = z2 * z2;
  const double r33 = r3 * r3;

  const double h11 = z2 + 2.0;
  const double h12 = -(z3 + 3.0 * z);
  const double h21 = -(r3 / 3.0) * (z2 + 1.0);
  const double h22 = (r3 / 3.0) * (z3 + 2.0 * z);
  const double h31 = form == G2Form::consistent
                         ? r33 * (5.0 * z2 / 18.0 + 1.0 / 9.0) - r4 * (z2 / 8.0 + 1.0 / 24.0)
                         : -z4 * r33 / 36.0 + 4.0 * z2 * r33 / 9.0 + r33 / 36.0 -
                               5.0 * z2 * r4 / 24.0 + r4 / 24.0;
  const double h32 = -5.0 * z3 * r33 / 18.0 - 11.0 * z * r33 / 36.0 + z3 * r4 / 8.0 + z * r4 / 8.0;

  const double u0 = g0 / s0;
  const double u1 = g1 / (s0 * s0);
  const double u2 = g2 / (s0 * s0 * s0);

  std::array<double, 3> a{}, at{};
  a[0] = u0 * (p - alpha * z);
  a[1] = r3 * u0 / 6.0 * (alpha + 2.0 * alpha * z2 - 2.0 * z * p) -
         u1 / 2.0 * (alpha * (z2 + 1.0) - z * p);
  a[2] = (h11 * p + alpha * h12) * u2 / 6.0 + (h21 * p + alpha * h22) * u1 +
         (h31 * p + alpha * h32) * u0;

  at[0] = u0 * (p + om * z);
  at[1] = u1 / 2.0 * (om * (z2 + 1.0) + z * p) -
          r3 * u0 / 6.0 * (om * (1.0 + 2.0 * z2) + 2.0 * z * p);
  at[2] = u2 / 6.0 * (h11 * p - om * h12) - u1 * (-h21 * p + om * h22) -
          u0 * (-h31 * p + om * h32);
  return compose(a, at, lam, Statistic::mean_ump);
}

CoefficientSet median_coefficients(const LocationModel& model, const Prior& prior, double alpha,
                                   int n, F23Form form) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("median_coefficients: alpha must lie in (0, 1)");
  const MedianCdfCoefficients r = median_cdf_coefficients(model, n, form);
  const double f0 = model.f0();
  const double g0 = prior.g(0.0);
  const double g1 = prior.g1(0.0);
  const double g2 = prior.g2(0.0);
  const double lam = lambda_alt(prior, 0.0);

  const double z = num::std_normal_upper_quantile(alpha);
  const double p = num::std_normal_pdf(z);
  const double om = 1.0 - alpha;
  const double z2 = z * z;
  const double z3 = z2 * z;

  const double v0 = g0 / (2.0 * f0);
  const double v1 = g1 / (4.0 * f0 * f0);
  const double v2 = g2 / (8.0 * f0 * f0 * f0);
  // Shared by a3 and at3.
  const double r2_term =
      v0 * (r.f21 * (z2 * z2 + 4.0 * z2 + 8.0) * p + r.f22 * (z2 + 2.0) * p + r.f23 * p);

  std::array<double, 3> a{}, at{};
  a[0] = v0 * (p - alpha * z);
  a[1] = v1 / 2.0 * (z * p - alpha * (z2 + 1.0)) - v0 * (r.f11 * (z * p + alpha) + r.f12 * alpha);
  a[2] = v2 / 6.0 * ((z2 + 2.0) * p - alpha * (z3 + 3.0 * z)) -
         v1 * (r.f11 * (alpha * z - 2.0 * p) + r.f12 * (alpha * z - p)) - r2_term;

  at[0] = v0 * (om * z + p);
  at[1] = v1 / 2.0 * (om * (z2 + 1.0) + z * p) + v0 * (r.f11 * (om - z * p) + r.f12 * om);
  at[2] = v2 / 6.0 * ((z2 + 2.0) * p + om * (z3 + 3.0 * z)) +
          v1 * (r.f11 * (om * z + 2.0 * p) + r.f12 * (om * z + p)) - r2_term;
  return compose(a, at, lam, Statistic::median, r.parity);
}

RateResult rate_series(const CoefficientSet& k, int n, int order) {
  if (n < 1) throw std::invalid_argument("rate_series: n must be >= 1");
  if (order < 1 || order > 3) throw std::invalid_argument("rate_series: order must be 1, 2 or 3");
  const double rn = std::sqrt(static_cast<double>(n));
  const double pw[3] = {1.0 / rn, 1.0 / n, 1.0 / (n * rn)};
  const auto c = k.c();
  const auto d = k.d();
  double delta = 0.0, eps = 0.0;
  for (int i = 0; i < order; ++i) {
    delta += c[static_cast<std::size_t>(i)] * pw[i];
    eps += d[static_cast<std::size_t>(i)] * pw[i];
  }
  RateResult out;
  out.method = RateMethod::series;
  out.order = order;
  const auto fill = [](RateValue& v, double raw) {
    v.value = std::clamp(raw, 0.0, 1.0);
    v.clamped = v.value != raw;
  };
  fill(out.delta, delta);
  fill(out.eps, eps);
  return out;
}

double g1_poly(double x, double r3, double z) {
  return r3 * x * x / 6.0 + z * r3 * x / 2.0 + z * z * r3 / 3.0;
}

double g2_poly(double x, double r3, double r4, double z, G2Form form) {
  const double z2 = z * z;
  const double z3 = z2 * z;
  const double z4 = z2 * z2;
  const double q = r3 * r3;
  double c5, c3, c1;
  if (form == G2Form::consistent) {
    c5 = -q / 72.0;
    c3 = r4 / 24.0 - 13.0 * z2 * q / 72.0 - q / 72.0;
    c1 = (z2 / 4.0 - 1.0 / 24.0) * r4 - z4 * q / 18.0 - 13.0 * z2 * q / 72.0 + q / 36.0;
  } else {
    c5 = q / 72.0;
    c3 = r4 / 8.0 - 13.0 * z2 * q / 72.0 - 7.0 * q / 24.0;
    c1 = (z2 / 4.0 - 7.0 / 24.0) * r4 - z4 * q / 18.0 - 13.0 * z2 * q / 72.0 + 4.0 * q / 9.0;
  }
  const double c4 = -z * q / 12.0;
  const double c2 = z * r4 / 6.0 - z3 * q / 6.0 - z * q / 12.0;
  const double c0 = (z3 / 8.0 - z / 24.0) * r4 - (z3 / 9.0 - z / 36.0) * q;
  return ((((c5 * x + c4) * x + c3) * x + c2) * x + c1) * x + c0;
}

double f1_poly(double x, double r3, double z) {
  const double f11 = -z * r3 / 2.0;
  const double f10 = -(2.0 * z * z + 1.0) * r3 / 6.0;
  return f11 * x + f10;
}

double f2_poly(double x, double r3, double r4, double z) {
  const double z2 = z * z;
  const double q = r3 * r3;
  const double f20 = (z2 * z + 2.0 * z) * q / 9.0 - (z2 * z + z) * r4 / 8.0;
  const double f21 = (7.0 * z2 / 24.0 + 1.0 / 12.0) * q - z2 * r4 / 4.0;
  const double f23 = r4 / 12.0 - q / 8.0;
  return ((f23 * x) * x + f21) * x + f20;
}

double edgeworth_power(double x, double r3, double r4, double z, int n, G2Form form) {
  const double rn = std::sqrt(static_cast<double>(n));
  return num::std_normal_cdf(x) +
         num::std_normal_pdf(x) * (g1_poly(x, r3, z) / rn + g2_poly(x, r3, r4, z, form) / n);
}

}  // namespace bfdr

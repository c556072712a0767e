#include "bfdr/analysis.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#include "bfdr/parallel.hpp"

namespace bfdr {

namespace {

// Runs body(i) for every grid index in parallel and rethrows the first
// failure (by index) once the loop is done.
template <class Body>
void run_grid(std::size_t count, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  par::for_each_task(
      static_cast<std::int64_t>(count),
      [&](std::int64_t i) {
        try {
          body(static_cast<std::size_t>(i));
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      },
      true);
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

SpikyLimits spiky_limits(double pm, double pp, double lam) {
  const auto prob = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!prob(pm) || !prob(pp) || !prob(lam))
    throw std::invalid_argument("spiky_limits: arguments must be probabilities");
  const double dd = lam * pm + (1.0 - lam) * pp;
  const double de = (1.0 - lam) * (1.0 - pp) + lam * (1.0 - pm);
  if (!(dd > 0.0)) throw std::invalid_argument("spiky_limits: delta limit has zero denominator");
  if (!(de > 0.0)) throw std::invalid_argument("spiky_limits: eps limit has zero denominator");
  SpikyLimits s;
  s.delta_limit_tau0 = lam * pm / dd;
  s.eps_limit_tau0 = (1.0 - lam) * (1.0 - pp) / de;
  return s;
}

std::vector<SpikyRow> empirical_spiky_check(const Problem& base,
                                            const std::vector<double>& tau_grid,
                                            const num::QuadratureConfig& cfg) {
  std::vector<SpikyRow> rows(tau_grid.size());
  run_grid(tau_grid.size(), [&](std::size_t i) {
    const double tau = tau_grid[i];
    const Problem p = with_prior(base, scale_prior(prior_of(base), tau));
    rows[i] = SpikyRow{tau, exact_rates(p, cfg)};
  });
  return rows;
}

std::optional<int> n_alpha(const Problem& base, double tau, double alpha, NAlphaMethod method,
                           int n_max, const num::QuadratureConfig& cfg) {
  if (n_max < 1) throw std::invalid_argument("n_alpha: n_max must be >= 1");
  const Problem scaled = with_alpha(with_prior(base, scale_prior(prior_of(base), tau)), alpha);
  const CoefficientSet coeffs =
      method == NAlphaMethod::series3 ? coefficients(scaled) : CoefficientSet{};
  for (int n = 1; n <= n_max; ++n) {
    const Problem p = with_n(scaled, n);
    double delta;
    if (method == NAlphaMethod::exact) {
      delta = exact_rates(p, cfg).delta.value;
    } else if (std::holds_alternative<MedianProblem>(p)) {
      // Median coefficients depend on the parity of n.
      delta = series_rates(p, 3).delta.value;
    } else {
      delta = rate_series(coeffs, n, 3).delta.value;
    }
    if (delta <= alpha) return n;
  }
  return std::nullopt;
}

std::vector<NAlphaRow> n_alpha_curve(const Problem& base, const std::vector<double>& tau_grid,
                                     double alpha, int n_max, bool with_series,
                                     const num::QuadratureConfig& cfg) {
  std::vector<NAlphaRow> rows(tau_grid.size());
  run_grid(tau_grid.size(), [&](std::size_t i) {
    NAlphaRow r;
    r.tau = tau_grid[i];
    r.exact = n_alpha(base, r.tau, alpha, NAlphaMethod::exact, n_max, cfg);
    if (with_series) r.series3 = n_alpha(base, r.tau, alpha, NAlphaMethod::series3, n_max, cfg);
    rows[i] = r;
  });
  return rows;
}

StatisticGap statistic_gap(double g0, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("statistic_gap: alpha must lie in (0, 1)");
  const double z = num::std_normal_upper_quantile(alpha);
  const double core = num::std_normal_pdf(z) - alpha * z;
  StatisticGap s;
  s.c1_gap = g0 * core * (num::kSqrt2Pi - 2.0);
  s.c2_gap_lower = g0 * g0 * z * core * (2.0 * num::kPi - 4.0);
  return s;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi >= lo) || count < 1)
    throw std::invalid_argument("log_grid: need 0 < lo <= hi and count >= 1");
  std::vector<double> g(static_cast<std::size_t>(count));
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> default_tau_grid() { return log_grid(0.2, 5.0, 25); }

}  // namespace bfdr

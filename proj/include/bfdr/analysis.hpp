#pragma once

#include <optional>
#include <vector>

#include "bfdr/problem.hpp"

namespace bfdr {

/// Limits of delta_n and eps_n under g_tau as tau -> 0 and tau -> infinity.
struct SpikyLimits {
  double delta_limit_tau0 = 0.0;
  double eps_limit_tau0 = 0.0;
  double delta_limit_tauinf = 0.0;
  double eps_limit_tauinf = 0.0;
};

/// p_minus, p_plus: one-sided limits of the power at the null boundary.
/// lambda_null: prior mass of the null. Throws std::invalid_argument on a
/// zero denominator.
SpikyLimits spiky_limits(double p_minus, double p_plus, double lambda_null);

struct SpikyRow {
  double tau = 0.0;
  RateResult rates;
};

/// Exact delta and eps with the problem's prior replaced by scale_prior(prior, tau).
std::vector<SpikyRow> empirical_spiky_check(const Problem& base,
                                            const std::vector<double>& tau_grid,
                                            const num::QuadratureConfig& cfg = {});

enum class NAlphaMethod { exact, series3 };

/// Smallest n in [1, n_max] with delta_n <= alpha under g_tau, where alpha is
/// also the test level. Linear scan; std::nullopt when no n qualifies.
std::optional<int> n_alpha(const Problem& base, double tau, double alpha, NAlphaMethod method,
                           int n_max, const num::QuadratureConfig& cfg = {});

struct NAlphaRow {
  double tau = 0.0;
  std::optional<int> exact;
  std::optional<int> series3;
  bool disagree() const { return exact != series3; }
};

/// n_alpha over a tau grid by both methods (grid points run in parallel).
std::vector<NAlphaRow> n_alpha_curve(const Problem& base, const std::vector<double>& tau_grid,
                                     double alpha, int n_max, bool with_series = true,
                                     const num::QuadratureConfig& cfg = {});

struct StatisticGap {
  double c1_gap = 0.0;        // c1(median) - c1(mean)
  double c2_gap_lower = 0.0;  // lower bound on c2(median) - c2(mean)
};

/// Closed-form mean-versus-median gap for a normal model with symmetric prior
/// density g0 at 0.
StatisticGap statistic_gap(double g0, double alpha);

/// Log-spaced grid with `count` points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int count);
/// Default tau grid: 0.2 to 5, 25 points.
std::vector<double> default_tau_grid();

}  // namespace bfdr

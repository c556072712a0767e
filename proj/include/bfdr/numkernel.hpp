#pragma once

// Special functions, root bracketing and deterministic quadrature shared by
// every other part of the library. Everything here is pure and reentrant.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace bfdr::num {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;

// --- standard normal -------------------------------------------------------

double std_normal_pdf(double x);
double std_normal_cdf(double x);
/// Upper tail 1 - Phi(x), computed without cancellation.
double std_normal_sf(double x);
/// Phi^{-1}(p). Throws std::invalid_argument unless 0 < p < 1.
double std_normal_quantile(double p);
/// Upper alpha quantile z_alpha = Phi^{-1}(1 - alpha), accurate for tiny alpha.
double std_normal_upper_quantile(double alpha);

// --- gamma / beta family ---------------------------------------------------

/// log C(n, k). Throws std::invalid_argument when k > n or n < 0.
double log_binomial(std::int64_t n, std::int64_t k);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Value v with P(Gamma(shape, rate) > v) = alpha.
double gamma_upper_quantile(double shape, double rate, double alpha);

/// Regularized incomplete beta I_x(a, b). `xc` must equal 1 - x; passing it
/// separately keeps precision when x is close to 1.
double beta_inc(double a, double b, double x, double xc);
inline double beta_inc(double a, double b, double x) { return beta_inc(a, b, x, 1.0 - x); }

// --- root finding ----------------------------------------------------------

/// Root of a continuous function with f(lo) and f(hi) of opposite sign.
/// Terminates when the bracket is narrower than `x_tol` (absolute).
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol = 1e-14);

// --- quadrature ------------------------------------------------------------

enum class QuadratureScheme { riemann_avg, adaptive };

struct QuadratureConfig {
  double abs_tol = 1e-8;
  /// riemann_avg: number of panel doublings (2^max_refinements panels at most).
  int max_refinements = 20;
  QuadratureScheme scheme = QuadratureScheme::adaptive;
  /// adaptive: bisection budget.
  int max_subintervals = 4000;
  /// Length scale of the tan() map used on infinite limits.
  double map_scale = 1.0;
  /// Evaluate riemann_avg nodes with OpenMP. Results are bit-identical either way.
  bool parallel = true;

  void validate() const;
};

struct IntegralValue {
  double value = 0.0;
  double error_bound = 0.0;
  /// Scale of the x = c + s*tan(u) map when a limit was infinite, else 0.
  double map_scale = 0.0;
  int evaluations = 0;
};

/// Quadrature did not reach abs_tol within its refinement budget.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, IntegralValue best)
      : std::runtime_error(what), best_(best) {}
  const IntegralValue& best_estimate() const noexcept { return best_; }

 private:
  IntegralValue best_;
};

/// Integral of f over (a, b); either limit may be +-infinity. Infinite limits
/// are handled by x = c + s*tan(u) with s = cfg.map_scale.
///
/// riemann_avg averages the lower and upper Riemann sums over a uniform grid
/// (panel extrema taken at the panel end points, exact for piecewise monotone
/// integrands) and reports half their gap as error_bound. adaptive is a global
/// Gauss-Kronrod 7/15 bisection scheme reporting the summed |K15 - G7|.
IntegralValue integrate(const std::function<double(double)>& f, double a, double b,
                        const QuadratureConfig& cfg = {});

}  // namespace bfdr::num

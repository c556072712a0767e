#pragma once

#include <string>

namespace bfdr {

enum class RateMethod { series, quadrature, simulation };

struct RateValue {
  double value = 0.0;
  /// Absolute error estimate; 0 when the method provides none.
  double error = 0.0;
  /// The raw value fell outside [0, 1] and was clamped.
  bool clamped = false;
};

/// delta_n = P(H0 | reject) and eps_n = P(H1 | accept) from one method.
struct RateResult {
  RateMethod method = RateMethod::series;
  int order = 0;  // series only
  RateValue delta;
  RateValue eps;
  /// Power came from an Edgeworth approximation rather than an exact cdf.
  bool approximate = false;
};

inline std::string method_label(const RateResult& r) {
  switch (r.method) {
    case RateMethod::series: return "series" + std::to_string(r.order);
    case RateMethod::quadrature: return "exact";
    case RateMethod::simulation: return "sim";
  }
  return "?";
}

}  // namespace bfdr

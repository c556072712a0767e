#pragma once

// Compact model/prior strings accepted on the command line, and the small
// grid syntaxes. Parsers append human-readable problems to a violation list
// instead of throwing, so a bad invocation reports everything at once.

#include <optional>
#include <string>
#include <vector>

#include "bfdr/analysis.hpp"

namespace bfdr::cli {

using Violations = std::vector<std::string>;

enum class ModelKind { normal_mean, exp_rate, normal_median, cauchy_median };

struct ModelSpec {
  ModelKind kind = ModelKind::normal_mean;
  std::string text;
};

struct PriorSpec {
  PriorKind kind;
  std::string text;
};

std::optional<ModelSpec> parse_model(const std::string& text, Violations& v);
std::optional<PriorSpec> parse_prior(const std::string& text, Violations& v);

/// "lo:hi:step", inclusive of hi up to rounding.
std::vector<double> parse_step_grid(const std::string& text, const std::string& flag, Violations& v);
/// "lo:hi:count", log spaced.
std::vector<double> parse_log_grid(const std::string& text, const std::string& flag, Violations& v);

struct ProblemOptions {
  double alpha = 0.05;
  int n = 1;
  double theta0 = 0.0;
  G2Form g2_form = G2Form::consistent;
  F23Form f23_form = F23Form::primary;
};

/// Assemble the problem; model/prior mismatches are reported as violations.
std::optional<Problem> build_problem(const ModelSpec& model, const PriorSpec& prior,
                                     const ProblemOptions& opt, Violations& v);

}  // namespace bfdr::cli

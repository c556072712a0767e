#include "specs.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace bfdr::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::optional<double> to_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x)) return std::nullopt;
  return x;
}

// Parses every field after the kind; false (with a violation) on any failure.
bool numbers(const std::vector<std::string>& parts, std::size_t expected, const std::string& text,
             const std::string& usage, std::vector<double>& out, Violations& v) {
  if (parts.size() != expected + 1) {
    v.push_back("prior '" + text + "': expected " + usage);
    return false;
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto x = to_double(parts[i]);
    if (!x) {
      v.push_back("prior '" + text + "': '" + parts[i] + "' is not a number");
      return false;
    }
    out.push_back(*x);
  }
  return true;
}

}  // namespace

std::optional<ModelSpec> parse_model(const std::string& text, Violations& v) {
  if (text == "normal-mean") return ModelSpec{ModelKind::normal_mean, text};
  if (text == "exp-rate") return ModelSpec{ModelKind::exp_rate, text};
  if (text == "normal-median") return ModelSpec{ModelKind::normal_median, text};
  if (text == "cauchy-median") return ModelSpec{ModelKind::cauchy_median, text};
  v.push_back("unknown model '" + text +
              "' (expected normal-mean, exp-rate, normal-median or cauchy-median)");
  return std::nullopt;
}

std::optional<PriorSpec> parse_prior(const std::string& text, Violations& v) {
  const auto parts = split(text, ':');
  const std::string kind = parts.empty() ? "" : parts[0];
  std::vector<double> x;
  const std::size_t before = v.size();
  std::optional<PriorSpec> out;
  if (kind == "normal") {
    if (numbers(parts, 1, text, "normal:TAU", x, v)) out = PriorSpec{prior_kind::Normal{x[0]}, text};
  } else if (kind == "t") {
    if (numbers(parts, 2, text, "t:M:TAU", x, v)) out = PriorSpec{prior_kind::StudentT{x[0], x[1]}, text};
  } else if (kind == "cauchy") {
    if (numbers(parts, 1, text, "cauchy:TAU", x, v)) out = PriorSpec{prior_kind::Cauchy{x[0]}, text};
  } else if (kind == "gamma-mode1") {
    if (numbers(parts, 1, text, "gamma-mode1:R", x, v)) out = PriorSpec{prior_kind::GammaMode1{x[0]}, text};
  } else if (kind == "f-mode1") {
    if (numbers(parts, 2, text, "f-mode1:R:S", x, v)) out = PriorSpec{prior_kind::FMode1{x[0], x[1]}, text};
  } else {
    v.push_back("unknown prior '" + text + "' (expected normal:TAU, t:M:TAU, cauchy:TAU, " +
                "gamma-mode1:R or f-mode1:R:S)");
  }
  if (!out) return std::nullopt;
  // Let the library judge the parameters so the CLI and library agree.
  try {
    (void)builtin_prior(out->kind);
  } catch (const std::invalid_argument& e) {
    v.push_back("prior '" + text + "': " + e.what());
  }
  return v.size() == before ? out : std::nullopt;
}

namespace {

// Three numbers separated by ':'; false when the text is malformed.
bool triple(const std::string& text, double& a, double& b, double& c) {
  const auto p = split(text, ':');
  if (p.size() != 3) return false;
  const auto x = to_double(p[0]), y = to_double(p[1]), z = to_double(p[2]);
  if (!x || !y || !z) return false;
  a = *x;
  b = *y;
  c = *z;
  return true;
}

}  // namespace

std::vector<double> parse_step_grid(const std::string& text, const std::string& flag, Violations& v) {
  double lo = 0, hi = 0, step = 0;
  if (!triple(text, lo, hi, step) || !(step > 0.0) || hi < lo) {
    v.push_back(flag + " '" + text + "': expected LO:HI:STEP with STEP > 0 and HI >= LO");
    return {};
  }
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (count > 100000) {
    v.push_back(flag + " '" + text + "': more than 100000 points");
    return {};
  }
  std::vector<double> g;
  for (long i = 0; i < count; ++i) g.push_back(lo + static_cast<double>(i) * step);
  return g;
}

std::vector<double> parse_log_grid(const std::string& text, const std::string& flag, Violations& v) {
  double lo = 0, hi = 0, count = 0;
  if (!triple(text, lo, hi, count) || !(lo > 0.0) || hi < lo || count < 1 || count > 100000 ||
      count != std::floor(count)) {
    v.push_back(flag + " '" + text + "': expected LO:HI:COUNT with 0 < LO <= HI and integer COUNT >= 1");
    return {};
  }
  return log_grid(lo, hi, static_cast<int>(count));
}

std::optional<Problem> build_problem(const ModelSpec& model, const PriorSpec& prior,
                                     const ProblemOptions& opt, Violations& v) {
  const std::size_t before = v.size();
  if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) v.push_back("--alpha must lie in (0, 1)");
  if (opt.n < 1) v.push_back("--n must be >= 1");
  const bool rate_prior = std::holds_alternative<prior_kind::GammaMode1>(prior.kind) ||
                          std::holds_alternative<prior_kind::FMode1>(prior.kind);
  if (model.kind == ModelKind::exp_rate && !rate_prior)
    v.push_back("model exp-rate needs a prior on a positive rate (gamma-mode1 or f-mode1)");
  if (model.kind != ModelKind::normal_mean && opt.theta0 != 0.0)
    v.push_back("--theta0 applies to normal-mean only");
  if (v.size() != before) return std::nullopt;

  const Prior p = builtin_prior(prior.kind);
  try {
    switch (model.kind) {
      case ModelKind::normal_mean: {
        auto mp = mean_problem(normal_mean_family(), p, opt.theta0, opt.alpha, opt.n);
        mp.g2_form = opt.g2_form;
        return mp;
      }
      case ModelKind::exp_rate: {
        auto mp = exp_rate_problem(p, opt.alpha, opt.n);
        mp.g2_form = opt.g2_form;
        return mp;
      }
      case ModelKind::normal_median:
      case ModelKind::cauchy_median: {
        auto loc = model.kind == ModelKind::normal_median ? normal_location() : cauchy_location();
        auto mp = median_problem(loc, p, opt.alpha, opt.n);
        mp.f23_form = opt.f23_form;
        return mp;
      }
    }
  } catch (const std::invalid_argument& e) {
    v.push_back(e.what());
  }
  return std::nullopt;
}

}  // namespace bfdr::cli

// bfdr: command-line front end for the rate library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bfdr/analysis.hpp"
#include "bfdr/mtsim.hpp"
#include "bfdr/parallel.hpp"
#include "specs.hpp"
#include "table.hpp"

namespace bc = bfdr::cli;
using bc::Cell;
using bc::Table;
using bc::Violations;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct ConfigError {
  Violations violations;
};

void emit_error(const std::string& kind, int code, const nlohmann::ordered_json& detail) {
  nlohmann::ordered_json rec;
  rec["status"] = "error";
  rec["kind"] = kind;
  rec["exit_code"] = code;
  for (auto it = detail.begin(); it != detail.end(); ++it) rec[it.key()] = it.value();
  std::cerr << rec.dump() << '\n';
}

// Options shared by every subcommand; each subcommand owns one copy.
struct Common {
  std::string model = "normal-mean";
  std::string prior = "normal:1";
  double alpha = 0.05;
  int n = 10;
  double theta0 = 0.0;
  std::string g2_form = "consistent";
  std::string f23_form = "primary";
  std::string format = "csv";
  std::string output;
};

struct Global {
  int workers = 0;
  double abs_tol = 1e-8;
  std::string quadrature = "adaptive";
};

void add_common(CLI::App* sub, Common& c, bool with_n = true) {
  sub->add_option("--model", c.model, "normal-mean | exp-rate | normal-median | cauchy-median")
      ->capture_default_str();
  sub->add_option("--prior", c.prior,
                  "normal:TAU | t:M:TAU | cauchy:TAU | gamma-mode1:R | f-mode1:R:S "
                  "(exp-rate takes gamma-mode1 or f-mode1, on the rate)")
      ->capture_default_str();
  sub->add_option("--alpha", c.alpha, "test level in (0, 1)")->capture_default_str();
  if (with_n) sub->add_option("--n", c.n, "sample size per experiment")->capture_default_str();
  sub->add_option("--theta0", c.theta0, "null boundary (normal-mean only)")->capture_default_str();
  sub->add_option("--g2-form", c.g2_form, "mean-statistic power polynomial")
      ->check(CLI::IsMember({"consistent", "alternate"}))
      ->capture_default_str();
  sub->add_option("--f23-form", c.f23_form, "even-n median coefficient")
      ->check(CLI::IsMember({"primary", "alternate"}))
      ->capture_default_str();
  sub->add_option("--format", c.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output", c.output,
                  "output file (stdout when absent; relative paths go under $BFDR_OUTPUT_DIR)");
  sub->set_help_all_flag();
  sub->set_help_flag("-h,--help", "print this help");
}

struct Resolved {
  bc::ModelSpec model;
  bc::PriorSpec prior;
  bfdr::Problem problem;
};

// Parses model, prior and test settings; everything wrong lands in `v`.
std::optional<Resolved> resolve(const Common& c, Violations& v, int n_override = 0) {
  const auto model = bc::parse_model(c.model, v);
  const auto prior = bc::parse_prior(c.prior, v);
  bc::ProblemOptions opt;
  opt.alpha = c.alpha;
  opt.n = n_override > 0 ? n_override : c.n;
  opt.theta0 = c.theta0;
  opt.g2_form = c.g2_form == "alternate" ? bfdr::G2Form::alternate : bfdr::G2Form::consistent;
  opt.f23_form = c.f23_form == "alternate" ? bfdr::F23Form::alternate : bfdr::F23Form::primary;
  if (!model || !prior) {
    // Still check the numeric settings so the report is complete.
    if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) v.push_back("--alpha must lie in (0, 1)");
    if (opt.n < 1) v.push_back("--n must be >= 1");
    return std::nullopt;
  }
  auto p = bc::build_problem(*model, *prior, opt, v);
  if (!p) return std::nullopt;
  return Resolved{*model, *prior, std::move(*p)};
}

std::string statistic_name(const bfdr::Problem& p) {
  return std::holds_alternative<bfdr::MedianProblem>(p) ? "median" : "mean";
}

Cell rate_cell(const std::optional<bfdr::RateValue>& r) { return r ? Cell{r->value} : Cell{}; }

// ---------------------------------------------------------------- commands

Table run_coeffs(const Resolved& r) {
  Table t("coeffs", {"model", "prior", "statistic", "alpha", "n", "parity", "lambda_alt", "a1", "a2", "a3",
                     "at1", "at2", "at3", "b1", "b2", "b3", "c1", "c2", "c3", "d1", "d2", "d3"});
  const auto c = bfdr::coefficients(r.problem);
  const auto& s = bfdr::setup_of(r.problem);
  Cell parity{};
  if (c.parity) parity = std::string(*c.parity == bfdr::Parity::odd ? "odd" : "even");
  t.add({r.model.text, r.prior.text, statistic_name(r.problem), s.alpha, std::int64_t{s.n}, parity,
         c.lambda_alt, c.a1, c.a2, c.a3, c.at1, c.at2, c.at3, c.b1, c.b2, c.b3, c.c1, c.c2, c.c3, c.d1,
         c.d2, c.d3});
  return t;
}

Table run_rates(const Resolved& r, const std::string& method, int order,
                const bfdr::num::QuadratureConfig& cfg) {
  Table t("rates", {"model", "prior", "alpha", "n", "method", "delta", "delta_error", "delta_clamped", "eps",
                    "eps_error", "eps_clamped", "approximate"});
  const auto& s = bfdr::setup_of(r.problem);
  std::vector<bfdr::RateResult> results;
  if (method != "exact") results.push_back(bfdr::series_rates(r.problem, order));
  if (method != "series") results.push_back(bfdr::exact_rates(r.problem, cfg));
  for (const auto& x : results) {
    t.add({r.model.text, r.prior.text, s.alpha, std::int64_t{s.n}, bfdr::method_label(x), x.delta.value,
           x.delta.error, x.delta.clamped, x.eps.value, x.eps.error, x.eps.clamped, x.approximate});
  }
  return t;
}

Table run_rate_sweep(const Resolved& r, const std::vector<double>& alphas, const std::vector<int>& ns,
                     const std::string& method, int order, const bfdr::num::QuadratureConfig& cfg) {
  Table t("sweep", {"alpha", "n", "delta_exact", "delta_series", "delta_gap", "eps_exact", "eps_series",
                    "eps_gap"});
  struct Row {
    std::optional<bfdr::RateValue> de, ds, ee, es;
  };
  std::vector<Row> rows(alphas.size() * ns.size());
  // Grid points are independent; one quadrature each, so schedule dynamically.
  std::vector<std::exception_ptr> errors(rows.size());
  bfdr::par::for_each_task(
      static_cast<std::int64_t>(rows.size()),
      [&](std::int64_t k) {
        const auto i = static_cast<std::size_t>(k);
        try {
          const auto p = bfdr::with_n(bfdr::with_alpha(r.problem, alphas[i / ns.size()]), ns[i % ns.size()]);
          if (method != "series") {
            const auto e = bfdr::exact_rates(p, cfg);
            rows[i].de = e.delta;
            rows[i].ee = e.eps;
          }
          if (method != "exact") {
            const auto s = bfdr::series_rates(p, order);
            rows[i].ds = s.delta;
            rows[i].es = s.eps;
          }
        } catch (...) {
          errors[i] = std::current_exception();
        }
      },
      true);
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& w = rows[i];
    const bool both = w.de && w.ds;
    t.add({alphas[i / ns.size()], std::int64_t{ns[i % ns.size()]}, rate_cell(w.de), rate_cell(w.ds),
           both ? Cell{std::fabs(w.de->value - w.ds->value)} : Cell{}, rate_cell(w.ee), rate_cell(w.es),
           both ? Cell{std::fabs(w.ee->value - w.es->value)} : Cell{}});
  }
  return t;
}

Table run_convergence(const Resolved& r, const std::vector<std::int64_t>& ms, std::uint64_t seed,
                      int replications, const bfdr::num::QuadratureConfig& cfg) {
  Table t("sweep", {"m", "replications", "fdr_hat", "se_fdr", "delta_hat", "se_delta", "eps_hat",
                    "delta_exact", "gap"});
  bfdr::SimConfig sc{r.problem, 1, seed, replications};
  const double delta = bfdr::exact_rates(r.problem, cfg).delta.value;
  for (const auto& row : bfdr::convergence_sweep(sc, ms, delta)) {
    const auto& s = row.result;
    t.add({row.m, std::int64_t{replications}, s.fdr_hat, s.se_fdr, s.delta_hat, s.se_delta, s.eps_hat, delta,
           row.gap});
  }
  return t;
}

Table run_sim(const Resolved& r, std::int64_t m, std::uint64_t seed, int replications) {
  Table t("sim", {"m", "replication", "V", "S", "R", "false_accepts", "accepts", "fdr_hat", "delta_hat",
                  "eps_hat", "se"});
  const bfdr::SimConfig sc{r.problem, m, seed, replications};
  const auto res = bfdr::simulate(sc);
  bfdr::ReplicationTally sum;
  for (std::size_t i = 0; i < res.tallies.size(); ++i) {
    const auto& x = res.tallies[i];
    t.add({m, std::to_string(i), x.V, x.S, x.R, x.false_accepts, x.accepts, x.fdr(),
           x.R > 0 ? Cell{double(x.V) / double(x.R)} : Cell{},
           x.accepts > 0 ? Cell{double(x.false_accepts) / double(x.accepts)} : Cell{}, x.fdr_se()});
    sum.V += x.V;
    sum.S += x.S;
    sum.R += x.R;
    sum.false_accepts += x.false_accepts;
    sum.accepts += x.accepts;
  }
  t.add({m, std::string("all"), sum.V, sum.S, sum.R, sum.false_accepts, sum.accepts, res.fdr_hat,
         res.delta_hat, res.eps_hat, res.se_fdr});
  return t;
}

Table run_nalpha(const Resolved& r, const std::vector<double>& taus, int n_max, const std::string& method,
                 const bfdr::num::QuadratureConfig& cfg) {
  Table t("nalpha", {"tau", "alpha", "n_alpha_exact", "n_alpha_series3", "disagree"});
  const double alpha = bfdr::setup_of(r.problem).alpha;
  if (method == "series3") {
    for (double tau : taus)
      t.add({tau, alpha, Cell{},
             bc::opt_cell(bfdr::n_alpha(r.problem, tau, alpha, bfdr::NAlphaMethod::series3, n_max, cfg)),
             Cell{}});
    return t;
  }
  for (const auto& row : bfdr::n_alpha_curve(r.problem, taus, alpha, n_max, method == "both", cfg)) {
    t.add({row.tau, alpha, bc::opt_cell(row.exact), bc::opt_cell(row.series3),
           method == "both" ? Cell{row.disagree()} : Cell{}});
  }
  return t;
}

Table run_spiky(const Resolved& r, const std::vector<double>& taus, const bfdr::num::QuadratureConfig& cfg) {
  Table t("spiky", {"tau", "delta", "delta_error", "eps", "eps_error", "delta_limit_tau0", "eps_limit_tau0"});
  const double theta0 = bfdr::setup_of(r.problem).theta0;
  // The tests here have continuous power, so both one-sided limits are the power at theta0.
  const double p0 = bfdr::power_at(r.problem, theta0);
  const double lam_null = 1.0 - bfdr::lambda_alt(bfdr::prior_of(r.problem), theta0);
  const auto lim = bfdr::spiky_limits(p0, p0, lam_null);
  for (const auto& row : bfdr::empirical_spiky_check(r.problem, taus, cfg)) {
    t.add({row.tau, row.rates.delta.value, row.rates.delta.error, row.rates.eps.value, row.rates.eps.error,
           lim.delta_limit_tau0, lim.eps_limit_tau0});
  }
  return t;
}

Table run_compare(const Common& c, const bc::PriorSpec& prior, const bfdr::num::QuadratureConfig& cfg) {
  Table t("compare", {"prior", "alpha", "n", "g0", "c1_mean", "c1_median", "c1_gap", "c1_gap_closed_form",
                      "c2_mean", "c2_median", "c2_gap", "c2_gap_lower", "delta_exact_mean",
                      "delta_exact_median"});
  const auto p = bfdr::builtin_prior(prior.kind);
  const auto mean = bfdr::mean_problem(bfdr::normal_mean_family(), p, 0.0, c.alpha, c.n);
  const auto med = bfdr::median_problem(bfdr::normal_location(), p, c.alpha, c.n);
  const auto cm = bfdr::coefficients(mean);
  const auto cd = bfdr::coefficients(med);
  const auto gap = bfdr::statistic_gap(p.g(0.0), c.alpha);
  t.add({prior.text, c.alpha, std::int64_t{c.n}, p.g(0.0), cm.c1, cd.c1, cd.c1 - cm.c1, gap.c1_gap, cm.c2, cd.c2,
         cd.c2 - cm.c2, gap.c2_gap_lower, bfdr::exact_rates(mean, cfg).delta.value,
         bfdr::exact_rates(med, cfg).delta.value});
  return t;
}

void write_table(const Table& t, const Common& c) {
  const auto fmt = c.format == "json" ? bc::Format::json : bc::Format::csv;
  if (c.output.empty()) {
    t.write(std::cout, fmt);
    return;
  }
  std::filesystem::path path(c.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("BFDR_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open output file " + path.string());
  t.write(os, fmt);
}

std::vector<int> to_ints(const std::vector<std::int64_t>& xs, const std::string& flag, Violations& v) {
  std::vector<int> out;
  for (auto x : xs) {
    if (x < 1 || x > 1000000) {
      v.push_back(flag + " values must lie in [1, 1000000]");
      return {};
    }
    out.push_back(static_cast<int>(x));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian false discovery and false acceptance rates: expansions, quadrature, simulation"};
  app.set_help_flag();
  app.set_help_all_flag("-h,--help", "print help for every command");
  app.require_subcommand(1);
  Global g;
  app.add_option("--workers", g.workers, "OpenMP workers; 0 uses the runtime default")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--abs-tol", g.abs_tol, "absolute quadrature tolerance")->capture_default_str();
  app.add_option("--quadrature", g.quadrature, "adaptive | riemann")
      ->check(CLI::IsMember({"adaptive", "riemann"}))
      ->capture_default_str();

  // coeffs
  Common co;
  auto* coeffs = app.add_subcommand("coeffs", "third-order expansion coefficients");
  add_common(coeffs, co);

  // rates
  Common cr;
  std::string rates_method = "both";
  int rates_order = 3;
  auto* rates = app.add_subcommand("rates", "delta_n and eps_n by series and/or quadrature");
  add_common(rates, cr);
  rates->add_option("--method", rates_method, "series | exact | both")
      ->check(CLI::IsMember({"series", "exact", "both"}))
      ->capture_default_str();
  rates->add_option("--order", rates_order, "series order")->check(CLI::Range(1, 3))->capture_default_str();

  // sweep
  Common cs;
  bool sweep_rates = false, sweep_conv = false;
  std::string alpha_grid;
  std::vector<std::int64_t> n_grid, m_grid;
  std::string sweep_method = "both";
  int sweep_order = 3;
  std::optional<std::uint64_t> sweep_seed;
  int sweep_reps = 1;
  auto* sweep = app.add_subcommand("sweep", "rate table over alpha x n, or simulation convergence over m");
  add_common(sweep, cs);
  sweep->add_flag("--rates", sweep_rates, "tabulate exact and series rates over the grids");
  sweep->add_flag("--convergence", sweep_conv, "tabulate |fdr_hat - delta_n| over --m-grid");
  sweep->add_option("--alpha-grid", alpha_grid, "LO:HI:STEP (overrides --alpha)");
  sweep->add_option("--n-grid", n_grid, "sample sizes (overrides --n)")->delimiter(',');
  sweep->add_option("--method", sweep_method, "series | exact | both")
      ->check(CLI::IsMember({"series", "exact", "both"}))
      ->capture_default_str();
  sweep->add_option("--order", sweep_order, "series order")->check(CLI::Range(1, 3))->capture_default_str();
  sweep->add_option("--m-grid", m_grid, "experiment counts for --convergence")->delimiter(',');
  sweep->add_option("--seed", sweep_seed, "random seed (required with --convergence)");
  sweep->add_option("--replications", sweep_reps, "replications per m")->capture_default_str();

  // sim
  Common cm;
  std::int64_t sim_m = 1000;
  int sim_reps = 1;
  std::optional<std::uint64_t> sim_seed;
  auto* sim = app.add_subcommand("sim", "simulate m simultaneous experiments");
  add_common(sim, cm);
  sim->add_option("--m", sim_m, "experiments per replication")->capture_default_str();
  sim->add_option("--replications", sim_reps, "replications")->capture_default_str();
  sim->add_option("--seed", sim_seed, "random seed (required)");

  // nalpha
  Common cn;
  std::string tau_grid_n = "0.2:5:25";
  std::vector<double> taus_n;
  int n_max = 500;
  std::string nalpha_method = "exact";
  auto* nalpha = app.add_subcommand("nalpha", "smallest n with delta_n <= alpha under the scaled prior");
  add_common(nalpha, cn, false);
  nalpha->add_option("--tau-grid", tau_grid_n, "LO:HI:COUNT, log spaced")->capture_default_str();
  nalpha->add_option("--tau", taus_n, "explicit tau values (override --tau-grid)")->delimiter(',');
  nalpha->add_option("--n-max", n_max, "largest n scanned")->capture_default_str();
  nalpha->add_option("--method", nalpha_method, "exact | series3 | both")
      ->check(CLI::IsMember({"exact", "series3", "both"}))
      ->capture_default_str();

  // spiky
  Common ck;
  std::string tau_grid_k = "0.001:1000:13";
  std::vector<double> taus_k;
  auto* spiky = app.add_subcommand("spiky", "exact rates as the prior scale shrinks or grows");
  add_common(spiky, ck);
  spiky->add_option("--tau-grid", tau_grid_k, "LO:HI:COUNT, log spaced")->capture_default_str();
  spiky->add_option("--tau", taus_k, "explicit tau values (override --tau-grid)")->delimiter(',');

  // compare
  Common cc;
  auto* compare = app.add_subcommand("compare", "mean versus median statistic for normal data");
  add_common(compare, cc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", kExitConfig, {{"message", e.what()}});
    return kExitConfig;
  }

  const Common* common = nullptr;
  try {
    Violations v;
    if (g.workers < 0) v.push_back("--workers must be >= 0");
    if (!(g.abs_tol > 0.0)) v.push_back("--abs-tol must be positive");
    bfdr::num::QuadratureConfig qcfg;
    qcfg.abs_tol = g.abs_tol;
    qcfg.scheme = g.quadrature == "riemann" ? bfdr::num::QuadratureScheme::riemann_avg
                                            : bfdr::num::QuadratureScheme::adaptive;
    bfdr::par::set_workers(g.workers);

    std::optional<Table> table;
    if (coeffs->parsed()) {
      common = &co;
      const auto r = resolve(co, v);
      if (!v.empty()) throw ConfigError{v};
      table = run_coeffs(*r);
    } else if (rates->parsed()) {
      common = &cr;
      const auto r = resolve(cr, v);
      if (!v.empty()) throw ConfigError{v};
      table = run_rates(*r, rates_method, rates_order, qcfg);
    } else if (sweep->parsed()) {
      common = &cs;
      if (sweep_rates == sweep_conv) v.push_back("sweep needs exactly one of --rates or --convergence");
      const auto r = resolve(cs, v);
      if (sweep_conv) {
        if (!sweep_seed) v.push_back("--seed is required with --convergence");
        if (m_grid.empty()) v.push_back("--m-grid is required with --convergence");
        for (auto m : m_grid)
          if (m < 1) v.push_back("--m-grid values must be >= 1");
        if (sweep_reps < 1) v.push_back("--replications must be >= 1");
        if (!v.empty()) throw ConfigError{v};
        table = run_convergence(*r, m_grid, *sweep_seed, sweep_reps, qcfg);
      } else {
        std::vector<double> alphas = alpha_grid.empty() ? std::vector<double>{cs.alpha}
                                                        : bc::parse_step_grid(alpha_grid, "--alpha-grid", v);
        for (double a : alphas)
          if (!(a > 0.0 && a < 1.0)) {
            v.push_back("--alpha-grid values must lie in (0, 1)");
            break;
          }
        std::vector<int> ns = n_grid.empty() ? std::vector<int>{cs.n} : to_ints(n_grid, "--n-grid", v);
        if (!v.empty()) throw ConfigError{v};
        table = run_rate_sweep(*r, alphas, ns, sweep_method, sweep_order, qcfg);
      }
    } else if (sim->parsed()) {
      common = &cm;
      const auto r = resolve(cm, v);
      if (!sim_seed) v.push_back("--seed is required for sim");
      if (sim_m < 1) v.push_back("--m must be >= 1");
      if (sim_reps < 1) v.push_back("--replications must be >= 1");
      if (!v.empty()) throw ConfigError{v};
      table = run_sim(*r, sim_m, *sim_seed, sim_reps);
    } else if (nalpha->parsed()) {
      common = &cn;
      const auto r = resolve(cn, v, 1);
      const auto taus = taus_n.empty() ? bc::parse_log_grid(tau_grid_n, "--tau-grid", v) : taus_n;
      for (double t : taus)
        if (!(t > 0.0)) {
          v.push_back("--tau values must be positive");
          break;
        }
      if (n_max < 1) v.push_back("--n-max must be >= 1");
      if (!v.empty()) throw ConfigError{v};
      table = run_nalpha(*r, taus, n_max, nalpha_method, qcfg);
    } else if (spiky->parsed()) {
      common = &ck;
      const auto r = resolve(ck, v);
      const auto taus = taus_k.empty() ? bc::parse_log_grid(tau_grid_k, "--tau-grid", v) : taus_k;
      for (double t : taus)
        if (!(t > 0.0)) {
          v.push_back("--tau values must be positive");
          break;
        }
      if (r && bfdr::setup_of(r->problem).theta0 != 0.0)
        v.push_back("spiky scales the prior about 0 and needs a problem with theta0 = 0");
      if (!v.empty()) throw ConfigError{v};
      table = run_spiky(*r, taus, qcfg);
    } else if (compare->parsed()) {
      common = &cc;
      const auto prior = bc::parse_prior(cc.prior, v);
      if (!(cc.alpha > 0.0 && cc.alpha < 1.0)) v.push_back("--alpha must lie in (0, 1)");
      if (cc.n < 1) v.push_back("--n must be >= 1");
      if (cc.model != "normal-mean") v.push_back("compare always uses normal data; drop --model");
      if (prior) {
        const auto p = bfdr::builtin_prior(prior->kind);
        if (std::fabs(p.g1(0.0)) > 1e-12) v.push_back("compare needs a prior symmetric about 0");
      }
      if (!v.empty()) throw ConfigError{v};
      table = run_compare(cc, *prior, qcfg);
    }
    write_table(*table, *common);
    return 0;
  } catch (const ConfigError& e) {
    emit_error("config", kExitConfig, {{"violations", e.violations}});
    return kExitConfig;
  } catch (const bfdr::num::NonConvergence& e) {
    emit_error("non_convergence", kExitNumeric,
               {{"message", e.what()},
                {"best_estimate", e.best_estimate().value},
                {"error_bound", e.best_estimate().error_bound}});
    return kExitNumeric;
  } catch (const bfdr::ZeroDenominator& e) {
    emit_error("zero_denominator", kExitNumeric, {{"message", e.what()}});
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    emit_error("config", kExitConfig, {{"violations", {e.what()}}});
    return kExitConfig;
  } catch (const std::exception& e) {
    emit_error("internal", 1, {{"message", e.what()}});
    return 1;
  }
}

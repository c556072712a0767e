#include "bfdr/mtsim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <omp.h>

namespace bfdr {

namespace {

// Draws one experiment and reports (theta is null, test rejects).
class Experiment {
 public:
  explicit Experiment(const Problem& p) {
    std::visit(
        [this](const auto& q) {
          using Q = std::decay_t<decltype(q)>;
          if constexpr (std::is_same_v<Q, MeanProblem>) {
            mean_.emplace(q.model, q.setup);
          } else {
            median_.emplace(q.model, q.setup);
          }
          prior_ = &q.prior;
          theta0_ = q.setup.theta0;
          n_ = q.setup.n;
        },
        p);
    if (!prior_->has_sampler()) throw std::invalid_argument("simulate: prior has no sampler");
    if (mean_ && !mean_->model().has_sampler())
      throw std::invalid_argument("simulate: model has no sampler");
  }

  std::pair<bool, bool> run(rng::Stream& s, std::vector<double>& buf) const {
    const double theta = prior_->sample(s);
    const bool is_null = theta <= theta0_;
    if (mean_) {
      double sum = 0.0;
      for (int i = 0; i < n_; ++i) sum += mean_->model().sample(theta, s);
      return {is_null, mean_->rejects(sum / n_)};
    }
    buf.resize(static_cast<std::size_t>(n_));
    for (auto& x : buf) x = median_->model().sample(theta, s);
    const auto mid = buf.begin() + n_ / 2;
    std::nth_element(buf.begin(), mid, buf.end());
    return {is_null, median_->rejects(*mid)};
  }

 private:
  std::optional<MeanTest> mean_;
  std::optional<MedianTest> median_;
  const Prior* prior_ = nullptr;
  double theta0_ = 0.0;
  int n_ = 1;
};

struct Counts {
  std::int64_t V = 0, S = 0, FA = 0, A = 0;
  void add(std::pair<bool, bool> o) {
    const auto [is_null, rej] = o;
    if (rej) {
      (is_null ? V : S) += 1;
    } else {
      A += 1;
      if (!is_null) FA += 1;
    }
  }
};

ReplicationTally to_tally(const Counts& c) {
  ReplicationTally t;
  t.V = c.V;
  t.S = c.S;
  t.R = c.V + c.S;
  t.false_accepts = c.FA;
  t.accepts = c.A;
  return t;
}

SimResult summarize(const SimConfig& cfg, std::vector<ReplicationTally> tallies) {
  SimResult r;
  r.m = cfg.m;
  std::int64_t V = 0, R = 0, FA = 0, A = 0;
  double sum = 0.0;
  for (const auto& t : tallies) {
    V += t.V;
    R += t.R;
    FA += t.false_accepts;
    A += t.accepts;
    sum += t.fdr();
  }
  const double reps = static_cast<double>(tallies.size());
  r.fdr_hat = sum / reps;
  if (tallies.size() >= 2) {
    double ss = 0.0;
    for (const auto& t : tallies) ss += (t.fdr() - r.fdr_hat) * (t.fdr() - r.fdr_hat);
    r.se_fdr = std::sqrt(ss / (reps - 1.0) / reps);
  } else {
    r.se_fdr = tallies.front().fdr_se();
  }
  r.delta_hat = R > 0 ? double(V) / double(R) : 0.0;
  r.se_delta = R > 0 ? std::sqrt(r.delta_hat * (1.0 - r.delta_hat) / double(R)) : 0.0;
  r.eps_hat = A > 0 ? double(FA) / double(A) : 0.0;
  r.rejections = R;
  r.tallies = std::move(tallies);
  return r;
}

}  // namespace

double ReplicationTally::fdr_se() const {
  const double p = fdr();
  return std::sqrt(p * (1.0 - p) / double(R > 0 ? R : 1));
}

void SimConfig::validate() const {
  std::vector<std::string> bad;
  if (m < 1) bad.emplace_back("m must be >= 1");
  if (replications < 1) bad.emplace_back("replications must be >= 1");
  if (bad.empty()) return;
  std::ostringstream msg;
  msg << "SimConfig:";
  for (const auto& b : bad) msg << ' ' << b << ';';
  throw std::invalid_argument(msg.str());
}

SimResult simulate_serial(const SimConfig& cfg) {
  cfg.validate();
  const Experiment ex(cfg.problem);
  std::vector<ReplicationTally> tallies;
  std::vector<double> buf;
  for (int r = 0; r < cfg.replications; ++r) {
    Counts c;
    for (std::int64_t e = 0; e < cfg.m; ++e) {
      rng::Stream s(cfg.seed, static_cast<std::uint32_t>(r), static_cast<std::uint64_t>(e));
      c.add(ex.run(s, buf));
    }
    tallies.push_back(to_tally(c));
  }
  return summarize(cfg, std::move(tallies));
}

SimResult simulate(const SimConfig& cfg) {
  cfg.validate();
  const Experiment ex(cfg.problem);
  std::vector<ReplicationTally> tallies;
  const std::int64_t m = cfg.m;
  for (int r = 0; r < cfg.replications; ++r) {
    std::int64_t V = 0, S = 0, FA = 0, A = 0;
#pragma omp parallel reduction(+ : V, S, FA, A)
    {
      std::vector<double> buf;
#pragma omp for schedule(static)
      for (std::int64_t e = 0; e < m; ++e) {
        rng::Stream s(cfg.seed, static_cast<std::uint32_t>(r), static_cast<std::uint64_t>(e));
        const auto [is_null, rej] = ex.run(s, buf);
        if (rej) {
          if (is_null) ++V; else ++S;
        } else {
          ++A;
          if (!is_null) ++FA;
        }
      }
    }
    tallies.push_back(to_tally(Counts{V, S, FA, A}));
  }
  return summarize(cfg, std::move(tallies));
}

std::vector<SweepRow> convergence_sweep(const SimConfig& config,
                                        const std::vector<std::int64_t>& m_grid, double delta_n) {
  if (m_grid.empty()) throw std::invalid_argument("convergence_sweep: m_grid is empty");
  std::vector<SweepRow> rows;
  for (std::int64_t m : m_grid) {
    SimConfig c = config;
    c.m = m;
    SweepRow row;
    row.m = m;
    row.result = simulate(c);
    row.gap = std::fabs(row.result.fdr_hat - delta_n);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace bfdr

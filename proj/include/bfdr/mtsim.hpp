#pragma once

#include <cstdint>
#include <vector>

#include "bfdr/problem.hpp"

namespace bfdr {

struct SimConfig {
  Problem problem;
  std::int64_t m = 1000;  // experiments per replication
  std::uint64_t seed = 0;
  int replications = 1;

  void validate() const;
};

/// Counts from one replication of m experiments.
struct ReplicationTally {
  std::int64_t V = 0;              // true nulls rejected
  std::int64_t S = 0;              // true alternatives rejected
  std::int64_t R = 0;              // rejections, V + S
  std::int64_t false_accepts = 0;  // true alternatives accepted
  std::int64_t accepts = 0;

  /// V / (R v 1).
  double fdr() const { return double(V) / double(R > 0 ? R : 1); }
  /// Binomial standard error of fdr() given R.
  double fdr_se() const;

  friend bool operator==(const ReplicationTally&, const ReplicationTally&) = default;
};

struct SimResult {
  double fdr_hat = 0.0;    // mean over replications of V/(R v 1)
  double delta_hat = 0.0;  // sum V / sum R
  double eps_hat = 0.0;    // sum false_accepts / sum accepts
  double se_fdr = 0.0;
  double se_delta = 0.0;
  std::int64_t rejections = 0;
  std::int64_t m = 0;
  std::vector<ReplicationTally> tallies;
};

/// Experiment e of replication r uses rng::Stream(seed, r, e) for its parameter
/// draw and its n observations, so the OpenMP split never changes a result.
SimResult simulate(const SimConfig& config);
/// Reference single-threaded loop over the same streams.
SimResult simulate_serial(const SimConfig& config);

struct SweepRow {
  std::int64_t m = 0;
  SimResult result;
  double gap = 0.0;  // |fdr_hat - delta_n|
};

/// One simulate() per m with the same seed, so smaller m reuse the leading
/// experiments of larger ones.
std::vector<SweepRow> convergence_sweep(const SimConfig& config,
                                        const std::vector<std::int64_t>& m_grid, double delta_n);

}  // namespace bfdr

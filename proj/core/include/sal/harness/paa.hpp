#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sal/harness/config.hpp"

namespace sal::harness {

struct TrialOutcome {
  int trial = 0;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> first_hit;  // absent when censored at the budget
  std::int64_t queries = 0;               // objective calls actually spent
  int restarts = 0;                       // extra SAC schedules started (restart policy)

  bool censored() const { return !first_hit.has_value(); }
};

struct PAAEstimate {
  Algorithm algorithm = Algorithm::uniform;
  double alpha_star = 0.0;
  double delta = 0.1;
  std::int64_t budget = 0;
  /// Empirical (1 - delta)-quantile of first-hit counts; absent when the
  /// order statistic falls on a censored trial.
  std::optional<std::int64_t> quantile;
  double hit_fraction = 0.0;
  int censored = 0;
  std::vector<TrialOutcome> outcomes;  // sorted by trial index
  /// Exact geometric quantile for uniform search when |D_alpha*| is known.
  std::optional<std::int64_t> theory_reference;
  double target_measure = 0.0;  // |D_alpha*|

  bool valid() const { return quantile.has_value(); }
  int trials() const { return static_cast<int>(outcomes.size()); }
  /// Fewer trials than 1/delta: the order statistic is the sample maximum.
  bool small_sample() const { return static_cast<double>(trials()) * delta < 1.0; }
};

/// Rank k = ceil((1 - delta) R), at least 1, of the order statistic used.
int quantile_rank(int trials, double delta);

/// k-th smallest first hit with censored trials ranked above every hit.
std::optional<std::int64_t> paa_quantile(std::span<const TrialOutcome> outcomes, double delta);

/// One trial. Uniform search runs until a hit or the budget. A SAC trial runs
/// its schedule in stop-on-hit mode, then continues per `cfg.continuation`
/// until a hit or the budget.
TrialOutcome run_trial(const ProblemInstance& problem, const ExperimentConfig& cfg, Algorithm algorithm,
                       double alpha_star, int trial, std::uint64_t seed);

/// R trials at one target; stream is the alpha* index used for seed derivation.
PAAEstimate estimate_one(const ProblemInstance& problem, const ExperimentConfig& cfg, Algorithm algorithm,
                         double alpha_star, std::uint64_t stream);

/// Every (algorithm, alpha*) pair of the config, algorithm-major.
std::vector<PAAEstimate> estimate_paa(const ExperimentConfig& cfg);

}  // namespace sal::harness

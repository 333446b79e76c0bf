#pragma once

#include <cstdint>
#include <vector>

#include "sal/harness/config.hpp"

namespace sal::harness {

/// Per-iteration checks of one completion-mode diagnostic run.
struct ConditionRow {
  Algorithm algorithm = Algorithm::sac1;
  double alpha_star = 0.0;
  int run = 0;
  int t = 0;
  double alpha_t = 0.0;
  bool has_hypothesis = false;
  double radius = 0.0;
  double training_error = 0.0;
  std::size_t positives = 0;
  std::size_t training_size = 0;
  std::int64_t fallbacks = 0;
  // Error-target independence.
  double independence_lhs = 0.0;
  double independence_rhs = 0.0;
  double independence_z = 0.0;
  // One-side error: |D_h \ D_alpha_t| and its standard error.
  double one_side_violation = 0.0;
  double one_side_se = 0.0;
  // |D_h| against |D_alpha_t|.
  double h_measure = 0.0;
  double h_se = 0.0;
  double alpha_t_measure = 0.0;
  double alpha_t_se = 0.0;

  /// Violation within 3 standard errors of zero.
  bool one_side_ok() const { return one_side_violation <= 3.0 * one_side_se; }
  /// |D_h| <= |D_alpha_t| within 3 combined standard errors.
  bool measure_ok() const;
};

/// Sphere problems only (ConfigError otherwise). Runs `diagnostic_runs`
/// completion-mode schedules per SAC algorithm and alpha*; uniform entries are
/// skipped. Iterations without a hypothesis produce rows with zero measures.
std::vector<ConditionRow> condition_report(const ExperimentConfig& cfg);

/// Average success probability of the T_h branch over the iterations of a
/// completion-mode run, weighted by the queries of each iteration. Each draw
/// is simulated the way the engine makes it (rejection into the box, uniform
/// fallback; uniform when the iteration had no hypothesis).
double hypothesis_success_rate(const RunResult& run, const RegionPredicate& target, const Box& box,
                               std::size_t draws_per_iteration, Rng& rng,
                               int max_rejects = kDefaultMaxRejects);

}  // namespace sal::harness

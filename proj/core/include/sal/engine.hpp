#pragma once

// The sampling-and-learning loop specialised to classification (SAC), the
// uniform-search baseline, and exact query accounting.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sal/learners.hpp"
#include "sal/problems.hpp"

namespace sal {

enum class ScheduleMode { sac1, sac2 };

/// Free parameters of one SAC run.
struct SacConfig {
  double alpha_star = 0.0;
  int iterations = 0;                  // T
  std::vector<std::int64_t> samples;   // m_0 .. m_T, size T + 1
  double lambda = 0.5;
  std::vector<double> thresholds;      // alpha_1 > ... > alpha_T, size T
  LearnerKind learner = LearnerKind::sphere;
  double delta = 0.1;                  // carried for reporting
  double eta = 0.5;                    // carried for reporting
  int max_rejects = kDefaultMaxRejects;
  /// Queries allowed after iteration T. Each extra iteration repeats the last
  /// one: relabel the latest batch at alpha_T, refit, draw m_T points.
  std::int64_t extension_budget = 0;

  std::int64_t total_samples() const;
  /// Throws ConfigError describing the first violated invariant.
  void validate() const;
};

/// Lemma-3-style sizing: the smallest m >= d for which the zero-training-error
/// generalization bound drops to `target_error` (natural log, confidence eta).
std::int64_t required_sample_size(double target_error, int vc_dim, double eta);

/// Parameters prescribed by the SAC_I (sac1) and SAC_II (sac2) analyses:
/// alpha_t = 2^-t; sac1 runs ceil(log2(1/sqrt(alpha*))) iterations sized for
/// error 2^-T with lambda = 1/2 and the plain sphere learner; sac2 runs
/// ceil(log2(1/alpha*)) iterations sized for error 1/2 with lambda = 1/3 and
/// the one-side learner. m_0 equals the per-iteration size.
SacConfig default_schedule(double alpha_star, int n, ScheduleMode mode);

struct IterationDiagnostics {
  int t = 0;                             // > T for extension iterations
  double alpha_t = 0.0;
  std::int64_t first_query = 0;          // 1-based index of the iteration's first query
  std::int64_t queries = 0;
  std::optional<SphereHypothesis> hypothesis;  // absent when the batch had no positives
  double training_error = 0.0;
  std::size_t positives = 0;
  std::size_t training_size = 0;
  std::int64_t hypothesis_draws = 0;     // queries routed to T_h
  std::int64_t fallbacks = 0;            // T_h draws that fell back to U_X
  bool no_positives = false;
};

struct RunResult {
  std::vector<double> best_trace;          // best-so-far after each query
  std::optional<std::int64_t> first_hit;   // 1-based index of first f(x) <= alpha*
  std::int64_t total_queries = 0;
  Point best_x;
  double best_value = 0.0;
  std::vector<IterationDiagnostics> iterations;
  bool stopped_on_hit = false;
};

/// Learning step h_t = C(B_t). Receives the labeled batch and the iteration.
/// A learner may throw NoPositives; the engine then samples U_X for that iteration.
using Learner = std::function<SphereHypothesis(std::span<const LabeledSample>, int t)>;

Learner make_learner(LearnerKind kind);

/// General loop with an injected classifier; run_sac uses the configured one.
RunResult run_sal(const ProblemSpec& problem, const SacConfig& cfg, const Learner& learner, Rng& rng,
                  bool stop_on_hit);

RunResult run_sac(const ProblemSpec& problem, const SacConfig& cfg, Rng& rng, bool stop_on_hit);

/// Up to `budget` i.i.d. uniform queries.
RunResult run_uniform(const ProblemSpec& problem, std::int64_t budget, double alpha_star, Rng& rng,
                      bool stop_on_hit);

}  // namespace sal

#include "sal/harness/paa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "sal/harness/seeds.hpp"
#include "sal/theory.hpp"

namespace sal::harness {

int quantile_rank(int trials, double delta) {
  const double raw = std::ceil((1.0 - delta) * static_cast<double>(trials) - 1e-9);
  return std::clamp(static_cast<int>(raw), 1, std::max(trials, 1));
}

std::optional<std::int64_t> paa_quantile(std::span<const TrialOutcome> outcomes, double delta) {
  if (outcomes.empty()) return std::nullopt;
  std::vector<std::int64_t> hits;
  hits.reserve(outcomes.size());
  for (const TrialOutcome& o : outcomes) {
    hits.push_back(o.first_hit.value_or(std::numeric_limits<std::int64_t>::max()));
  }
  const auto k = static_cast<std::size_t>(quantile_rank(static_cast<int>(outcomes.size()), delta)) - 1;
  std::nth_element(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end());
  if (hits[k] == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  return hits[k];
}

TrialOutcome run_trial(const ProblemInstance& problem, const ExperimentConfig& cfg, Algorithm algorithm,
                       double alpha_star, int trial, std::uint64_t seed) {
  TrialOutcome out;
  out.trial = trial;
  out.seed = seed;
  Rng rng(seed);
  if (algorithm == Algorithm::uniform) {
    const RunResult r = run_uniform(problem.spec, cfg.budget, alpha_star, rng, true);
    out.first_hit = r.first_hit;
    out.queries = r.total_queries;
    return out;
  }
  SacConfig sc = schedule_for(cfg, algorithm, alpha_star);
  if (cfg.continuation == Continuation::extend) {
    sc.extension_budget = std::max<std::int64_t>(0, cfg.budget - sc.total_samples());
  }
  int schedules = 0;
  while (out.queries < cfg.budget && (schedules == 0 || cfg.continuation == Continuation::restart)) {
    ++schedules;
    const RunResult r = run_sac(problem.spec, sc, rng, true);
    if (r.first_hit && out.queries + *r.first_hit <= cfg.budget) out.first_hit = out.queries + *r.first_hit;
    out.queries += r.total_queries;
    if (out.first_hit) break;
  }
  out.restarts = schedules - 1;
  out.queries = std::min(out.queries, cfg.budget);
  return out;
}

PAAEstimate estimate_one(const ProblemInstance& problem, const ExperimentConfig& cfg, Algorithm algorithm,
                         double alpha_star, std::uint64_t stream) {
  PAAEstimate est;
  est.algorithm = algorithm;
  est.alpha_star = alpha_star;
  est.delta = cfg.delta;
  est.budget = cfg.budget;
  est.outcomes.resize(static_cast<std::size_t>(cfg.trials));
  detail::parallel_for(cfg.trials, cfg.workers, [&](int i) {
    est.outcomes[static_cast<std::size_t>(i)] =
        run_trial(problem, cfg, algorithm, alpha_star, i, trial_seed(cfg.seed, stream, static_cast<std::uint64_t>(i)));
  });
  for (const TrialOutcome& o : est.outcomes) est.censored += o.censored();
  est.hit_fraction = 1.0 - static_cast<double>(est.censored) / static_cast<double>(cfg.trials);
  est.quantile = paa_quantile(est.outcomes, cfg.delta);

  const SublevelMeasure target = problem.sublevel_measure(alpha_star, static_cast<std::size_t>(cfg.mc_samples));
  est.target_measure = target.value;
  if (algorithm == Algorithm::uniform && target.value > 0.0) {
    est.theory_reference = theory::uniform_paa_complexity(std::min(1.0, target.value), cfg.delta).exact_quantile;
  }
  return est;
}

std::vector<PAAEstimate> estimate_paa(const ExperimentConfig& cfg) {
  const ProblemInstance problem = make_problem(cfg);
  std::vector<PAAEstimate> out;
  for (Algorithm a : cfg.algorithms) {
    for (std::size_t i = 0; i < cfg.alpha_stars.size(); ++i) {
      out.push_back(estimate_one(problem, cfg, a, cfg.alpha_stars[i], i));
    }
  }
  return out;
}

}  // namespace sal::harness

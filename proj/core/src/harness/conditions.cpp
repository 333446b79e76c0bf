#include "sal/harness/conditions.hpp"

#include <cmath>

#include "parallel.hpp"
#include "sal/harness/seeds.hpp"

namespace sal::harness {

bool ConditionRow::measure_ok() const {
  const double sigma = std::hypot(h_se, alpha_t_se);
  return h_measure <= alpha_t_measure + 3.0 * sigma;
}

namespace {

// Seed streams for diagnostics sit far from the alpha* indices used by trials.
constexpr std::uint64_t kDiagnosticStream = 0xd1a6ULL << 32;

std::vector<ConditionRow> diagnose_run(const ProblemInstance& problem, const ExperimentConfig& cfg, Algorithm a,
                                       double alpha_star, std::uint64_t stream, int run) {
  const SacConfig sc = schedule_for(cfg, a, alpha_star);
  const std::uint64_t seed = trial_seed(cfg.seed, kDiagnosticStream + stream, static_cast<std::uint64_t>(run));
  Rng rng(seed);
  const RunResult result = run_sac(problem.spec, sc, rng, false);

  const auto mc = static_cast<std::size_t>(cfg.mc_samples);
  const RegionPredicate target = problem.sublevel_region(alpha_star);
  const Box& box = problem.spec.box();
  std::vector<ConditionRow> rows;
  for (const IterationDiagnostics& it : result.iterations) {
    ConditionRow row;
    row.algorithm = a;
    row.alpha_star = alpha_star;
    row.run = run;
    row.t = it.t;
    row.alpha_t = it.alpha_t;
    row.training_error = it.training_error;
    row.positives = it.positives;
    row.training_size = it.training_size;
    row.fallbacks = it.fallbacks;
    const SublevelMeasure at = problem.sublevel_measure(it.alpha_t, mc);
    row.alpha_t_measure = at.value;
    row.alpha_t_se = at.std_error;
    if (it.hypothesis) {
      row.has_hypothesis = true;
      row.radius = it.hypothesis->ball.radius;
      const RegionPredicate region_t = problem.sublevel_region(it.alpha_t);
      const RegionPredicate h = RegionPredicate::of_ball(it.hypothesis->ball, box);
      Rng mc_rng(trial_seed(seed, static_cast<std::uint64_t>(it.t), 0));
      const IndependenceReport ind = check_error_target_independence(target, region_t, h, mc, mc_rng);
      row.independence_lhs = ind.lhs;
      row.independence_rhs = ind.rhs;
      row.independence_z = ind.z_score;
      const McEstimate violation = check_one_side_error(region_t, h, mc, mc_rng);
      row.one_side_violation = violation.value;
      row.one_side_se = violation.std_error;
      const McEstimate hm = mc_volume(h, mc, mc_rng);
      row.h_measure = hm.value;
      row.h_se = hm.std_error;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

double hypothesis_success_rate(const RunResult& run, const RegionPredicate& target, const Box& box,
                               std::size_t draws_per_iteration, Rng& rng, int max_rejects) {
  double weighted = 0.0;
  double total = 0.0;
  for (const IterationDiagnostics& it : run.iterations) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < draws_per_iteration; ++i) {
      std::optional<Point> x;
      if (it.hypothesis && it.hypothesis->ball.radius > 0.0) {
        x = sample_ball_in_box(it.hypothesis->ball, box, rng, max_rejects);
      }
      if (!x) x = sample_uniform(box, rng);
      hits += target.contains(*x);
    }
    const double rate = static_cast<double>(hits) / static_cast<double>(draws_per_iteration);
    weighted += static_cast<double>(it.queries) * rate;
    total += static_cast<double>(it.queries);
  }
  return total > 0.0 ? weighted / total : 0.0;
}

std::vector<ConditionRow> condition_report(const ExperimentConfig& cfg) {
  if (cfg.problem != ProblemFamily::sphere) {
    throw ConfigError("condition reports need a sphere problem (analytic sublevel sets)");
  }
  const ProblemInstance problem = make_problem(cfg);
  struct Job {
    Algorithm algorithm;
    double alpha_star;
    std::uint64_t stream;
    int run;
  };
  std::vector<Job> jobs;
  for (Algorithm a : cfg.algorithms) {
    if (a == Algorithm::uniform) continue;
    for (std::size_t i = 0; i < cfg.alpha_stars.size(); ++i) {
      for (int r = 0; r < cfg.diagnostic_runs; ++r) jobs.push_back({a, cfg.alpha_stars[i], i, r});
    }
  }
  std::vector<std::vector<ConditionRow>> parts(jobs.size());
  detail::parallel_for(static_cast<int>(jobs.size()), cfg.workers, [&](int j) {
    const Job& job = jobs[static_cast<std::size_t>(j)];
    parts[static_cast<std::size_t>(j)] = diagnose_run(problem, cfg, job.algorithm, job.alpha_star, job.stream, job.run);
  });
  std::vector<ConditionRow> rows;
  for (auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());
  return rows;
}

}  // namespace sal::harness

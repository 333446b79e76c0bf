#include "sal/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sal {

std::int64_t SacConfig::total_samples() const {
  std::int64_t total = 0;
  for (std::int64_t m : samples) total += m;
  return total;
}

void SacConfig::validate() const {
  if (!(alpha_star > 0.0)) throw ConfigError("alpha_star must be positive");
  if (iterations < 0) throw ConfigError("iteration count must be non-negative");
  if (samples.size() != static_cast<std::size_t>(iterations) + 1) {
    throw ConfigError("need exactly T + 1 sample sizes (m_0 .. m_T)");
  }
  for (std::int64_t m : samples) {
    if (m < 1) throw ConfigError("every sample size must be at least 1");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0,1]");
  if (thresholds.size() != static_cast<std::size_t>(iterations)) {
    throw ConfigError("need exactly T thresholds alpha_1 .. alpha_T");
  }
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0.0)) throw ConfigError("thresholds must be positive");
    if (i > 0 && !(thresholds[i] < thresholds[i - 1])) {
      throw ConfigError("threshold schedule must be strictly decreasing");
    }
  }
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
  if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("eta must lie in (0,1)");
  if (max_rejects < 1) throw ConfigError("max_rejects must be at least 1");
  if (extension_budget < 0) throw ConfigError("extension_budget must be non-negative");
  if (extension_budget > 0 && iterations == 0) throw ConfigError("extension needs at least one iteration");
}

std::int64_t required_sample_size(double target_error, int vc_dim, double eta) {
  if (!(target_error > 0.0)) throw DomainError("target error must be positive");
  const double d = vc_dim;
  auto bound = [&](double m) {
    return 2.0 / m * (d * std::log(2.0 * std::numbers::e * m / d) + std::log(2.0 / eta));
  };
  // bound(m) is decreasing for m >= d; bracket then bisect on integers.
  std::int64_t lo = vc_dim;
  if (bound(static_cast<double>(lo)) <= target_error) return lo;
  std::int64_t hi = lo * 2;
  while (bound(static_cast<double>(hi)) > target_error) hi *= 2;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (bound(static_cast<double>(mid)) <= target_error) hi = mid;
    else lo = mid;
  }
  return hi;
}

SacConfig default_schedule(double alpha_star, int n, ScheduleMode mode) {
  if (!(alpha_star > 0.0 && alpha_star < 1.0)) throw ConfigError("alpha_star must lie in (0,1)");
  if (n < 1) throw ConfigError("dimension must be positive");
  SacConfig cfg;
  cfg.alpha_star = alpha_star;
  cfg.eta = 0.5;
  cfg.delta = 0.1;
  const double log_inv = std::log2(1.0 / alpha_star);
  double target_error = 0.5;
  if (mode == ScheduleMode::sac1) {
    cfg.iterations = static_cast<int>(std::ceil(0.5 * log_inv));
    cfg.lambda = 0.5;
    cfg.learner = LearnerKind::sphere;
    target_error = std::ldexp(1.0, -cfg.iterations);
  } else {
    cfg.iterations = static_cast<int>(std::ceil(log_inv));
    cfg.lambda = 1.0 / 3.0;
    cfg.learner = LearnerKind::sphere_oneside;
  }
  const std::int64_t m = required_sample_size(target_error, n + 1, cfg.eta);
  cfg.samples.assign(static_cast<std::size_t>(cfg.iterations) + 1, m);
  for (int t = 1; t <= cfg.iterations; ++t) cfg.thresholds.push_back(std::ldexp(1.0, -t));
  return cfg;
}

Learner make_learner(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::sphere:
      return [](std::span<const LabeledSample> b, int t) {
        SphereHypothesis h = fit_sphere(b);
        h.iteration = t;
        return h;
      };
    case LearnerKind::sphere_oneside:
      return [](std::span<const LabeledSample> b, int t) {
        SphereHypothesis h = fit_sphere_oneside(b);
        h.iteration = t;
        return h;
      };
    case LearnerKind::custom: break;
  }
  throw ConfigError("no built-in learner for kind 'custom'");
}

namespace {

// Every objective call goes through here: one call, one trace entry.
class QueryLedger {
 public:
  QueryLedger(const ProblemSpec& problem, double alpha_star, RunResult& out)
      : problem_(problem), alpha_star_(alpha_star), out_(out) {}

  double query(const Point& x) {
    const double y = problem_(x);
    const bool first = out_.best_trace.empty();
    if (first || y < out_.best_value) {
      out_.best_value = y;
      out_.best_x = x;
    }
    out_.best_trace.push_back(out_.best_value);
    ++out_.total_queries;
    if (!out_.first_hit && y <= alpha_star_) out_.first_hit = out_.total_queries;
    return y;
  }

  bool hit() const { return out_.first_hit.has_value(); }

 private:
  const ProblemSpec& problem_;
  double alpha_star_;
  RunResult& out_;
};

}  // namespace

RunResult run_uniform(const ProblemSpec& problem, std::int64_t budget, double alpha_star, Rng& rng,
                      bool stop_on_hit) {
  if (budget < 1) throw ConfigError("uniform search budget must be at least 1");
  RunResult result;
  result.best_trace.reserve(static_cast<std::size_t>(std::min<std::int64_t>(budget, 1 << 20)));
  QueryLedger ledger(problem, alpha_star, result);
  for (std::int64_t i = 0; i < budget; ++i) {
    ledger.query(sample_uniform(problem.box(), rng));
    if (stop_on_hit && ledger.hit()) {
      result.stopped_on_hit = true;
      break;
    }
  }
  return result;
}

RunResult run_sal(const ProblemSpec& problem, const SacConfig& cfg, const Learner& learner, Rng& rng,
                  bool stop_on_hit) {
  cfg.validate();
  if (!learner) throw ConfigError("learner must be callable");
  RunResult result;
  result.best_trace.reserve(static_cast<std::size_t>(std::min<std::int64_t>(cfg.total_samples(), 1 << 20)));
  QueryLedger ledger(problem, cfg.alpha_star, result);
  const Box& box = problem.box();

  // S_0: m_0 uniform draws.
  std::vector<Sample> previous;
  previous.reserve(static_cast<std::size_t>(cfg.samples[0]));
  for (std::int64_t i = 0; i < cfg.samples[0]; ++i) {
    Point x = sample_uniform(box, rng);
    const double y = ledger.query(x);
    previous.push_back({std::move(x), y});
    if (stop_on_hit && ledger.hit()) {
      result.stopped_on_hit = true;
      return result;
    }
  }

  std::bernoulli_distribution use_hypothesis(cfg.lambda);
  // One learn-then-sample step; returns true when the run stopped on a hit.
  auto iterate = [&](int t, double alpha_t, std::int64_t m_t) {
    IterationDiagnostics diag;
    diag.t = t;
    diag.alpha_t = alpha_t;
    diag.first_query = result.total_queries + 1;

    // T_t holds the previous iteration's samples only; S_t starts empty.
    const std::vector<LabeledSample> batch = label(previous, diag.alpha_t);
    diag.training_size = batch.size();
    for (const LabeledSample& s : batch) diag.positives += (s.z == Label::positive);
    try {
      SphereHypothesis h = learner(batch, t);
      diag.training_error = training_error(h, batch);
      diag.hypothesis = std::move(h);
    } catch (const NoPositives&) {
      diag.no_positives = true;
    }

    std::vector<Sample> current;
    current.reserve(static_cast<std::size_t>(m_t));
    for (std::int64_t i = 0; i < m_t; ++i) {
      // Degenerate mixtures draw no coin so lambda = 0 replays uniform search.
      bool from_h = cfg.lambda >= 1.0 || (cfg.lambda > 0.0 && use_hypothesis(rng));
      std::optional<Point> x;
      if (from_h && diag.hypothesis) {
        ++diag.hypothesis_draws;
        if (diag.hypothesis->ball.radius > 0.0) {
          x = sample_ball_in_box(diag.hypothesis->ball, box, rng, cfg.max_rejects);
        }
        if (!x) ++diag.fallbacks;
      }
      if (!x) x = sample_uniform(box, rng);
      const double y = ledger.query(*x);
      current.push_back({std::move(*x), y});
      ++diag.queries;
      if (stop_on_hit && ledger.hit()) {
        result.iterations.push_back(std::move(diag));
        result.stopped_on_hit = true;
        return true;
      }
    }
    result.iterations.push_back(std::move(diag));
    previous = std::move(current);
    return false;
  };

  for (int t = 1; t <= cfg.iterations; ++t) {
    if (iterate(t, cfg.thresholds[static_cast<std::size_t>(t) - 1], cfg.samples[static_cast<std::size_t>(t)])) {
      return result;
    }
  }
  if (cfg.extension_budget > 0) {
    const std::int64_t stop_at = result.total_queries + cfg.extension_budget;
    const double alpha_last = cfg.thresholds.back();
    for (int t = cfg.iterations + 1; result.total_queries < stop_at; ++t) {
      const std::int64_t m = std::min(cfg.samples.back(), stop_at - result.total_queries);
      if (iterate(t, alpha_last, m)) return result;
    }
  }
  return result;
}

RunResult run_sac(const ProblemSpec& problem, const SacConfig& cfg, Rng& rng, bool stop_on_hit) {
  return run_sal(problem, cfg, make_learner(cfg.learner), rng, stop_on_hit);
}

}  // namespace sal

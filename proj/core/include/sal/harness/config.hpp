#pragma once

// Experiment configuration: a flat `key = value` text file. Lines starting
// with '#' are comments, lists are comma separated, unknown keys are errors.
//
//   problem          sphere | spike
//   dimension        positive integer
//   x_star           comma list of n coordinates (inside the problem box)
//   x_star_seed      u64; x* drawn uniformly in the box when x_star is absent
//   algorithm        comma list of uniform | sac1 | sac2
//   alpha_star       comma list of targets in (0,1)
//   delta            (0,1)
//   trials           R >= 1
//   budget           per-trial query cap >= 1
//   seed             master seed (u64)
//   output           output directory
//   workers          concurrent trial workers >= 1
//   sample_size      optional m_t override for t >= 1
//   initial_samples  optional m_0 override
//   lambda           optional mixing weight override in [0,1]
//   eta              confidence parameter used for sample sizing, (0,1)
//   continuation     extend | restart | none: what a SAC trial does when its
//                    schedule ends without a hit (default extend)
//   diagnostic_runs  runs per alpha* for the condition report
//   mc_samples       Monte Carlo sample count for measures
//   bootstrap        bootstrap resamples for slope intervals

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sal/engine.hpp"
#include "sal/problems.hpp"

namespace sal::harness {

enum class Algorithm { uniform, sac1, sac2 };
enum class ProblemFamily { sphere, spike };
/// extend: keep repeating the final iteration; restart: run a fresh schedule
/// on the same stream; none: the trial is censored.
enum class Continuation { extend, restart, none };

std::string_view to_string(Algorithm a);
std::string_view to_string(ProblemFamily f);
std::string_view to_string(Continuation c);
Algorithm parse_algorithm(std::string_view text);

struct ExperimentConfig {
  ProblemFamily problem = ProblemFamily::sphere;
  int dimension = 2;
  std::optional<std::vector<double>> x_star;
  std::uint64_t x_star_seed = 0;
  std::vector<Algorithm> algorithms{Algorithm::uniform};
  std::vector<double> alpha_stars;
  double delta = 0.1;
  int trials = 1000;
  std::int64_t budget = 10'000'000;
  std::uint64_t seed = 1;
  std::string output = "out";
  int workers = 1;
  std::optional<std::int64_t> sample_size;
  std::optional<std::int64_t> initial_samples;
  std::optional<double> lambda;
  double eta = 0.5;
  Continuation continuation = Continuation::extend;
  int diagnostic_runs = 10;
  std::int64_t mc_samples = 100'000;
  int bootstrap = 200;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Serializes every key; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ExperimentConfig& cfg);

/// A concrete problem built from a config, with analytic geometry retained.
struct ProblemInstance {
  ProblemFamily family;
  Point x_star;
  std::optional<SphereProblem> sphere;
  std::optional<SpikeProblem> spike;
  ProblemSpec spec;

  /// |D_alpha|: closed form when the sublevel set is an unclipped ball,
  /// Monte Carlo otherwise.
  SublevelMeasure sublevel_measure(double alpha, std::size_t mc_samples = kDefaultMcSamples) const;
  RegionPredicate sublevel_region(double alpha) const;
};

ProblemInstance make_problem(const ExperimentConfig& cfg);

/// SAC parameters for one algorithm and target, with config overrides applied.
SacConfig schedule_for(const ExperimentConfig& cfg, Algorithm algorithm, double alpha_star);

}  // namespace sal::harness

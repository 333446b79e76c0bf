#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sal/harness/conditions.hpp"
#include "sal/harness/sweep.hpp"

namespace sal::harness {

// Output files, all under one directory.
inline constexpr const char* kTrialsFile = "trials.csv";
inline constexpr const char* kEstimatesFile = "estimates.csv";
inline constexpr const char* kSummaryFile = "summary.txt";
inline constexpr const char* kConditionsFile = "conditions.csv";
inline constexpr const char* kTheoryFile = "theory.csv";

/// algorithm,alpha_star,trial,seed,first_hit,censored. Censored rows leave first_hit empty.
std::string trials_csv(std::span<const PAAEstimate> estimates);
/// One `estimate` row per PAAEstimate and one `slope` row per SlopeReport.
std::string estimates_csv(std::span<const PAAEstimate> estimates, std::span<const SlopeReport> slopes);
/// Plain-text comparison of empirical quantiles with theory reference values,
/// plus the uniform / SAC speedups at the smallest shared alpha*.
std::string summary_text(const ExperimentConfig& cfg, std::span<const PAAEstimate> estimates,
                         std::span<const SlopeReport> slopes);
std::string conditions_csv(std::span<const ConditionRow> rows);
/// Bound values for every (algorithm, alpha*) of a config; no objective calls.
std::string theory_csv(const ExperimentConfig& cfg);

/// Creates `dir` and writes trials, estimates and summary.
void emit_report(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                 std::span<const PAAEstimate> estimates, std::span<const SlopeReport> slopes);
void write_text(const std::filesystem::path& path, const std::string& text);

/// An `estimate` row read back from estimates.csv.
struct EstimateRecord {
  Algorithm algorithm = Algorithm::uniform;
  double alpha_star = 0.0;
  std::optional<std::int64_t> quantile;
  double hit_fraction = 0.0;
  int censored = 0;
};
std::vector<EstimateRecord> parse_estimates_csv(const std::string& text);

/// Ratio of the two medians over paired trials (uncensored in both);
/// absent when no pair qualifies.
std::optional<double> paired_median_speedup(const PAAEstimate& baseline, const PAAEstimate& contender);

}  // namespace sal::harness

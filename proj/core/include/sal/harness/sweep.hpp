#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sal/harness/paa.hpp"

namespace sal::harness {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least squares of y on x. Needs at least two distinct x values.
std::optional<LinearFit> least_squares(std::span<const double> x, std::span<const double> y);

struct SlopeReport {
  Algorithm algorithm = Algorithm::uniform;
  /// Slope of ln(quantile) against ln(1/alpha*), over valid estimates only.
  std::optional<LinearFit> fit;
  /// 2.5% and 97.5% percentiles of bootstrap slopes (trials resampled per alpha*).
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  int bootstrap_used = 0;           // resamples where every point stayed valid
  std::vector<double> alphas_used;
  std::vector<double> gaps;         // alpha* values without a valid quantile
};

/// `estimates` must share one algorithm. Bootstrap streams derive from `seed`.
SlopeReport slope_report(std::span<const PAAEstimate> estimates, int bootstrap, std::uint64_t seed);

struct SweepResult {
  std::vector<PAAEstimate> estimates;
  std::vector<SlopeReport> slopes;  // one per configured algorithm
};

SweepResult scaling_sweep(const ExperimentConfig& cfg);

}  // namespace sal::harness

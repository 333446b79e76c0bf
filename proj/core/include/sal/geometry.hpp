#pragma once

// Hyper-ball volumes, uniform samplers and Monte Carlo measures over a box.
//
// Every Monte Carlo routine takes an explicit sample count and returns a
// standard error so callers can pick tolerances from the binomial model.

#include <cstddef>
#include <functional>
#include <optional>

#include "sal/types.hpp"

namespace sal {

struct Ball {
  Point center;
  double radius = 0.0;

  bool contains(const Point& x) const { return (x - center).norm() <= radius; }
  int dimension() const { return static_cast<int>(center.size()); }
};

/// Membership test plus the box it is total on.
struct RegionPredicate {
  std::function<bool(const Point&)> contains;
  Box box;

  static RegionPredicate whole(const Box& box);
  static RegionPredicate of_ball(const Ball& ball, const Box& box);
};

RegionPredicate intersect(const RegionPredicate& a, const RegionPredicate& b);
RegionPredicate symmetric_difference(const RegionPredicate& a, const RegionPredicate& b);
/// a \ b
RegionPredicate difference(const RegionPredicate& a, const RegionPredicate& b);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t hits = 0;
  std::size_t samples = 0;

  /// Distance from zero in standard errors; 0 when nothing was hit.
  double z_from_zero() const { return std_error > 0.0 ? value / std_error : 0.0; }
};

inline constexpr std::size_t kDefaultMcSamples = 100000;
inline constexpr int kDefaultMaxRejects = 100;

/// pi^{n/2} r^n / Gamma(n/2 + 1), evaluated in the log domain.
double ball_volume(int n, double r);

Point sample_uniform(const Box& box, Rng& rng);

/// Isotropic direction scaled by radius * U^{1/n}. Requires radius > 0.
Point sample_ball(const Ball& ball, Rng& rng);

/// Rejection-samples sample_ball until the draw lies in the box. Returns
/// nullopt after max_rejects failed draws; the caller then falls back to the
/// uniform distribution over the box.
std::optional<Point> sample_ball_in_box(const Ball& ball, const Box& box, Rng& rng,
                                        int max_rejects = kDefaultMaxRejects);

/// Hit fraction of `samples` uniform box points times |box|.
McEstimate mc_volume(const RegionPredicate& region, std::size_t samples, Rng& rng);

struct IndependenceReport {
  double lhs = 0.0;  // |target ∩ (alpha_t Δ h)|
  double rhs = 0.0;  // |target| * |alpha_t Δ h|
  double z_score = 0.0;
  std::size_t samples = 0;
};

/// Error-target independence, estimated on one common sample set. The z-score
/// is the standardized sample covariance of the two indicators (phi * sqrt(N)).
IndependenceReport check_error_target_independence(const RegionPredicate& target,
                                                   const RegionPredicate& alpha_t,
                                                   const RegionPredicate& hypothesis,
                                                   std::size_t samples, Rng& rng);

/// Estimated |D_h \ D_alpha_t|, the measure of false-positive territory.
McEstimate check_one_side_error(const RegionPredicate& alpha_t, const RegionPredicate& hypothesis,
                                std::size_t samples, Rng& rng);

}  // namespace sal

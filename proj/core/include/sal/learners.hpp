#pragma once

// Threshold labeling and sphere classifiers for the sampling-and-classification
// loop. Learners are pure functions of their batch and never call the objective.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "sal/geometry.hpp"

namespace sal {

struct Sample {
  Point x;
  double y = 0.0;
};

enum class Label : int { negative = -1, positive = +1 };

struct LabeledSample {
  Point x;
  Label z = Label::negative;
};

enum class LearnerKind { sphere, sphere_oneside, custom };

std::string_view to_string(LearnerKind kind);

/// Ball-shaped classifier: +1 iff ||x - center|| <= radius.
struct SphereHypothesis {
  Ball ball;
  LearnerKind learner = LearnerKind::sphere;
  int iteration = 0;

  Label classify(const Point& x) const { return ball.contains(x) ? Label::positive : Label::negative; }
};

/// Raised when a batch has no positive label to enclose.
class NoPositives : public std::runtime_error {
 public:
  NoPositives() : std::runtime_error("learning batch has no positive samples") {}
};

/// z = +1 iff alpha_t - y >= 0. Order preserved.
std::vector<LabeledSample> label(std::span<const Sample> batch, double alpha_t);

struct MebOptions {
  /// Point counts up to this use the exact move-to-front construction.
  std::size_t exact_threshold = 1000;
  /// Relative tolerance of the core-set iteration used above the threshold.
  double epsilon = 1e-6;
};

/// Minimum enclosing ball. Exact (Welzl, move-to-front) up to the threshold;
/// above it, a core-set iteration that stops once every point is within
/// (1 + epsilon) of the core-set ball, then widens the radius to cover all points.
Ball min_enclosing_ball(std::span<const Point> points, const MebOptions& opts = {});

/// Minimum enclosing ball of the positive samples. Throws NoPositives.
SphereHypothesis fit_sphere(std::span<const LabeledSample> batch, const MebOptions& opts = {});

/// fit_sphere, then shrink the radius to (1 - margin) times the distance from
/// the center to the nearest negative, so no training negative is covered.
SphereHypothesis fit_sphere_oneside(std::span<const LabeledSample> batch, double margin = 1e-9,
                                    const MebOptions& opts = {});

/// Fraction of the batch misclassified by h.
double training_error(const SphereHypothesis& h, std::span<const LabeledSample> batch);

}  // namespace sal

#pragma once

// Minimization problems over a unit-volume box with objective range [0, 1],
// and the two benchmark families: Sphere on [0,1]^n and Spike on [-1/2,1/2]^n.

#include <functional>
#include <string>

#include "sal/geometry.hpp"
#include "sal/types.hpp"

namespace sal {

using Objective = std::function<double(const Point&)>;

/// Box solution space plus a deterministic objective into [0, 1].
///
/// Evaluation never clamps: a point outside the box raises DomainError, so
/// every sampler must respect the box and query accounting stays exact.
class ProblemSpec {
 public:
  ProblemSpec(std::string name, Box box, Objective objective);

  const std::string& name() const { return name_; }
  int dimension() const { return box_.dimension(); }
  const Box& box() const { return box_; }

  double operator()(const Point& x) const;

 private:
  std::string name_;
  Box box_;
  Objective objective_;
};

/// f(x) = ||x - x*||^2 / n on [0,1]^n.
class SphereProblem {
 public:
  explicit SphereProblem(Point x_star);

  int dimension() const { return static_cast<int>(x_star_.size()); }
  const Point& x_star() const { return x_star_; }
  const Box& box() const { return box_; }

  /// Radius sqrt(n * alpha) of the sublevel ball {f <= alpha}.
  double sublevel_radius(double alpha) const;
  Ball sublevel_ball(double alpha) const { return {x_star_, sublevel_radius(alpha)}; }
  /// Analytic membership in D_alpha; does not count as a query.
  bool in_sublevel(const Point& x, double alpha) const;
  RegionPredicate sublevel_region(double alpha) const;

  ProblemSpec spec() const;

 private:
  Point x_star_;
  Box box_;
};

double sphere_eval(const SphereProblem& p, const Point& x);

/// Piecewise-linear g on [0,1]: x - k/10 on A1_k = [3k/20, (3k+2)/20] (k = 0..6)
/// and -x + k/5 on A2_k = ((3k-1)/20, 3k/20) (k = 1..6). A shared boundary
/// point takes the closed A1 formula.
double spike_g(double r);

/// f(x) = g(||x - x*|| / sqrt(n)) on [-1/2,1/2]^n.
class SpikeProblem {
 public:
  explicit SpikeProblem(Point x_star);

  int dimension() const { return static_cast<int>(x_star_.size()); }
  const Point& x_star() const { return x_star_; }
  const Box& box() const { return box_; }

  /// Normalized distance r = ||x - x*|| / sqrt(n), in [0, 1] on the box.
  double normalized_distance(const Point& x) const;
  bool in_sublevel(const Point& x, double alpha) const;
  RegionPredicate sublevel_region(double alpha) const;

  ProblemSpec spec() const;

 private:
  Point x_star_;
  Box box_;
};

double spike_eval(const SpikeProblem& p, const Point& x);

struct SublevelMeasure {
  double value = 0.0;
  double std_error = 0.0;  // zero when exact
  bool approximate = false;
};

/// |D_alpha ∩ box| for a Sphere problem. Closed-form ball volume when the
/// sublevel ball sits inside the box, exactly 1 when it covers the box, and a
/// Monte Carlo estimate (tagged approximate) when it clips.
SublevelMeasure sublevel_measure_sphere(const SphereProblem& p, double alpha,
                                        std::size_t mc_samples = kDefaultMcSamples,
                                        std::uint64_t mc_seed = 0x5eedULL);

/// True when the sublevel ball of radius sqrt(n * alpha) fits inside the box.
bool sphere_sublevel_unclipped(const SphereProblem& p, double alpha);

}  // namespace sal

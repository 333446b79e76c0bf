#include "sal/problems.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace sal {

ProblemSpec::ProblemSpec(std::string name, Box box, Objective objective)
    : name_(std::move(name)), box_(std::move(box)), objective_(std::move(objective)) {
  if (!objective_) throw ConfigError("problem objective must be callable");
}

double ProblemSpec::operator()(const Point& x) const {
  if (!box_.contains(x)) throw DomainError("objective evaluated outside the solution box");
  return objective_(x);
}

namespace {

void require_inside(const Box& box, const Point& x, const char* what) {
  if (!box.contains(x)) throw DomainError(std::string(what) + ": point outside the box");
}

}  // namespace

SphereProblem::SphereProblem(Point x_star) : x_star_(std::move(x_star)), box_(Box::unit(static_cast<int>(x_star_.size()))) {
  require_inside(box_, x_star_, "SphereProblem optimum");
}

double SphereProblem::sublevel_radius(double alpha) const {
  if (alpha < 0.0) throw DomainError("sublevel radius needs alpha >= 0");
  return std::sqrt(dimension() * alpha);
}

bool SphereProblem::in_sublevel(const Point& x, double alpha) const {
  return (x - x_star_).squaredNorm() / dimension() <= alpha;
}

RegionPredicate SphereProblem::sublevel_region(double alpha) const {
  return {[self = *this, alpha](const Point& x) { return self.in_sublevel(x, alpha); }, box_};
}

ProblemSpec SphereProblem::spec() const {
  return ProblemSpec("sphere", box_, [self = *this](const Point& x) { return sphere_eval(self, x); });
}

double sphere_eval(const SphereProblem& p, const Point& x) {
  require_inside(p.box(), x, "sphere_eval");
  return (x - p.x_star()).squaredNorm() / p.dimension();
}

double spike_g(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("spike g is defined on [0,1]");
  for (int k = 0; k <= 6; ++k) {
    if (r >= 3.0 * k / 20.0 && r <= (3.0 * k + 2.0) / 20.0) return r - k / 10.0;
    const int k2 = k + 1;
    if (k2 <= 6 && r > (3.0 * k2 - 1.0) / 20.0 && r < 3.0 * k2 / 20.0) return -r + k2 / 5.0;
  }
  // unreachable: the pieces partition [0,1]
  throw DomainError("spike g: argument fell between pieces");
}

SpikeProblem::SpikeProblem(Point x_star)
    : x_star_(std::move(x_star)), box_(Box::centered(static_cast<int>(x_star_.size()))) {
  require_inside(box_, x_star_, "SpikeProblem optimum");
}

double SpikeProblem::normalized_distance(const Point& x) const {
  // The box diameter is sqrt(n), so r <= 1 up to rounding.
  return std::min(1.0, (x - x_star_).norm() / std::sqrt(static_cast<double>(dimension())));
}

bool SpikeProblem::in_sublevel(const Point& x, double alpha) const {
  return spike_g(normalized_distance(x)) <= alpha;
}

RegionPredicate SpikeProblem::sublevel_region(double alpha) const {
  return {[self = *this, alpha](const Point& x) { return self.in_sublevel(x, alpha); }, box_};
}

ProblemSpec SpikeProblem::spec() const {
  return ProblemSpec("spike", box_, [self = *this](const Point& x) { return spike_eval(self, x); });
}

double spike_eval(const SpikeProblem& p, const Point& x) {
  require_inside(p.box(), x, "spike_eval");
  return spike_g(p.normalized_distance(x));
}

bool sphere_sublevel_unclipped(const SphereProblem& p, double alpha) {
  const double r = p.sublevel_radius(alpha);
  const Point& c = p.x_star();
  for (int i = 0; i < p.dimension(); ++i) {
    if (c[i] - r < 0.0 || c[i] + r > 1.0) return false;
  }
  return true;
}

SublevelMeasure sublevel_measure_sphere(const SphereProblem& p, double alpha, std::size_t mc_samples,
                                        std::uint64_t mc_seed) {
  if (!(alpha > 0.0)) throw DomainError("sublevel measure needs alpha > 0");
  const int n = p.dimension();
  const double r = p.sublevel_radius(alpha);
  if (sphere_sublevel_unclipped(p, alpha)) return {ball_volume(n, r), 0.0, false};

  // Covers the whole box when the farthest corner is inside the ball.
  double far2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::max(p.x_star()[i], 1.0 - p.x_star()[i]);
    far2 += d * d;
  }
  if (far2 <= r * r) return {1.0, 0.0, false};

  Rng rng(mc_seed);
  const McEstimate est = mc_volume(p.sublevel_region(alpha), mc_samples, rng);
  return {est.value, est.std_error, true};
}

}  // namespace sal

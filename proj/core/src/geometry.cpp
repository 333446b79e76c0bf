#include "sal/geometry.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace sal {

Box::Box(Point lower, Point upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.size() == 0) {
    throw ConfigError("box bounds must be non-empty and of equal dimension");
  }
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) throw ConfigError("box lower bound must be below upper bound");
  }
}

Box Box::unit(int n) { return Box(Point::Zero(n), Point::Ones(n)); }

Box Box::centered(int n) { return Box(Point::Constant(n, -0.5), Point::Constant(n, 0.5)); }

bool Box::contains(const Point& x) const {
  if (x.size() != lower_.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
  }
  return true;
}

double Box::volume() const { return (upper_ - lower_).prod(); }

RegionPredicate RegionPredicate::whole(const Box& box) {
  return {[](const Point&) { return true; }, box};
}

RegionPredicate RegionPredicate::of_ball(const Ball& ball, const Box& box) {
  return {[ball](const Point& x) { return ball.contains(x); }, box};
}

RegionPredicate intersect(const RegionPredicate& a, const RegionPredicate& b) {
  return {[fa = a.contains, fb = b.contains](const Point& x) { return fa(x) && fb(x); }, a.box};
}

RegionPredicate symmetric_difference(const RegionPredicate& a, const RegionPredicate& b) {
  return {[fa = a.contains, fb = b.contains](const Point& x) { return fa(x) != fb(x); }, a.box};
}

RegionPredicate difference(const RegionPredicate& a, const RegionPredicate& b) {
  return {[fa = a.contains, fb = b.contains](const Point& x) { return fa(x) && !fb(x); }, a.box};
}

double ball_volume(int n, double r) {
  if (n < 1) throw DomainError("ball_volume: dimension must be positive");
  if (r < 0.0) throw DomainError("ball_volume: radius must be non-negative");
  if (r == 0.0) return 0.0;
  const double half_n = 0.5 * n;
  const double log_vol = half_n * std::log(std::numbers::pi) + n * std::log(r) - std::lgamma(half_n + 1.0);
  return std::exp(log_vol);
}

Point sample_uniform(const Box& box, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Point x(box.dimension());
  for (int i = 0; i < box.dimension(); ++i) {
    x[i] = box.lower()[i] + unit(rng) * (box.upper()[i] - box.lower()[i]);
  }
  return x;
}

Point sample_ball(const Ball& ball, Rng& rng) {
  if (!(ball.radius > 0.0)) throw DomainError("sample_ball: radius must be positive");
  const int n = ball.dimension();
  std::normal_distribution<double> gauss(0.0, 1.0);
  Point dir(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) dir[i] = gauss(rng);
    norm = dir.norm();
  } while (norm == 0.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = ball.radius * std::pow(unit(rng), 1.0 / n);
  return ball.center + (scale / norm) * dir;
}

std::optional<Point> sample_ball_in_box(const Ball& ball, const Box& box, Rng& rng, int max_rejects) {
  for (int attempt = 0; attempt < max_rejects; ++attempt) {
    Point x = sample_ball(ball, rng);
    if (box.contains(x)) return x;
  }
  return std::nullopt;
}

namespace {

McEstimate binomial_estimate(std::size_t hits, std::size_t samples, double scale) {
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  McEstimate est;
  est.value = p * scale;
  est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples)) * scale;
  est.hits = hits;
  est.samples = samples;
  return est;
}

}  // namespace

McEstimate mc_volume(const RegionPredicate& region, std::size_t samples, Rng& rng) {
  if (samples == 0) throw DomainError("mc_volume: need at least one sample");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    if (region.contains(sample_uniform(region.box, rng))) ++hits;
  }
  return binomial_estimate(hits, samples, region.box.volume());
}

IndependenceReport check_error_target_independence(const RegionPredicate& target,
                                                   const RegionPredicate& alpha_t,
                                                   const RegionPredicate& hypothesis,
                                                   std::size_t samples, Rng& rng) {
  if (samples == 0) throw DomainError("check_error_target_independence: need samples");
  std::size_t in_target = 0;
  std::size_t in_error = 0;
  std::size_t in_both = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point x = sample_uniform(target.box, rng);
    const bool a = target.contains(x);
    const bool e = alpha_t.contains(x) != hypothesis.contains(x);
    in_target += a;
    in_error += e;
    in_both += (a && e);
  }
  const double n = static_cast<double>(samples);
  const double vol = target.box.volume();
  const double pa = in_target / n;
  const double pe = in_error / n;
  const double pae = in_both / n;

  IndependenceReport report;
  report.samples = samples;
  report.lhs = pae * vol;
  report.rhs = (pa * vol) * (pe * vol);
  const double spread = std::sqrt(pa * (1.0 - pa) * pe * (1.0 - pe));
  report.z_score = spread > 0.0 ? (pae - pa * pe) * std::sqrt(n) / spread : 0.0;
  return report;
}

McEstimate check_one_side_error(const RegionPredicate& alpha_t, const RegionPredicate& hypothesis,
                                std::size_t samples, Rng& rng) {
  return mc_volume(difference(hypothesis, alpha_t), samples, rng);
}

}  // namespace sal

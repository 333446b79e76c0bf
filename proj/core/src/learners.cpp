#include "sal/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/QR>

namespace sal {

std::string_view to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::sphere: return "sphere";
    case LearnerKind::sphere_oneside: return "sphere_oneside";
    case LearnerKind::custom: return "custom";
  }
  return "unknown";
}

std::vector<LabeledSample> label(std::span<const Sample> batch, double alpha_t) {
  if (batch.empty()) throw DomainError("label: empty batch");
  std::vector<LabeledSample> out;
  out.reserve(batch.size());
  for (const Sample& s : batch) {
    out.push_back({s.x, alpha_t - s.y >= 0.0 ? Label::positive : Label::negative});
  }
  return out;
}

namespace {

// Relative slack for "inside the current ball" tests inside the MEB recursion.
constexpr double kInsideSlack = 1e-12;

bool inside(const Ball& b, const Point& p) {
  if (b.radius < 0.0) return false;
  const double r = b.radius;
  return (p - b.center).squaredNorm() <= r * r * (1.0 + kInsideSlack) + 1e-30;
}

// Smallest ball with every boundary point on its surface. The center lies in
// the affine hull of the points; affinely dependent sets get the minimum-norm
// solution of the Gram system.
Ball ball_through(const std::vector<Point>& boundary, int dim) {
  if (boundary.empty()) return {Point::Zero(dim), -1.0};
  const Point& p0 = boundary.front();
  if (boundary.size() == 1) return {p0, 0.0};

  const auto k = static_cast<Eigen::Index>(boundary.size() - 1);
  Eigen::MatrixXd q(dim, k);
  for (Eigen::Index j = 0; j < k; ++j) q.col(j) = boundary[static_cast<std::size_t>(j + 1)] - p0;
  const Eigen::MatrixXd gram = 2.0 * q.transpose() * q;
  const Eigen::VectorXd rhs = q.colwise().squaredNorm().transpose();
  const Eigen::VectorXd lambda = gram.completeOrthogonalDecomposition().solve(rhs);

  Ball b{p0 + q * lambda, 0.0};
  for (const Point& p : boundary) b.radius = std::max(b.radius, (p - b.center).norm());
  return b;
}

// Welzl's construction with the move-to-front heuristic. Recursion depth is
// bounded by the support size (at most dim + 1).
class MoveToFrontMeb {
 public:
  MoveToFrontMeb(std::span<const Point> points, int dim) : dim_(dim) {
    order_.reserve(points.size());
    for (const Point& p : points) order_.push_back(&p);
  }

  Ball solve() {
    std::vector<Point> boundary;
    boundary.reserve(static_cast<std::size_t>(dim_) + 1);
    run(order_.size(), boundary);
    return ball_;
  }

 private:
  void run(std::size_t end, std::vector<Point>& boundary) {
    ball_ = ball_through(boundary, dim_);
    if (boundary.size() == static_cast<std::size_t>(dim_) + 1) return;
    for (std::size_t i = 0; i < end; ++i) {
      const Point* p = order_[i];
      if (inside(ball_, *p)) continue;
      boundary.push_back(*p);
      run(i, boundary);
      boundary.pop_back();
      std::rotate(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(i),
                  order_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
  }

  int dim_;
  std::vector<const Point*> order_;
  Ball ball_;
};

Ball exact_meb(std::span<const Point> points, int dim) { return MoveToFrontMeb(points, dim).solve(); }

Ball coreset_meb(std::span<const Point> points, int dim, const MebOptions& opts) {
  std::vector<Point> core;
  const std::size_t seed_size = std::min(points.size(), opts.exact_threshold / 2 + 1);
  const std::size_t stride = points.size() / seed_size;
  for (std::size_t i = 0; i < seed_size; ++i) core.push_back(points[i * stride]);

  Ball b = exact_meb(core, dim);
  for (;;) {
    std::size_t far = 0;
    double far_dist = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double d = (points[i] - b.center).norm();
      if (d > far_dist) {
        far_dist = d;
        far = i;
      }
    }
    if (far_dist <= (1.0 + opts.epsilon) * b.radius) {
      b.radius = std::max(b.radius, far_dist);
      return b;
    }
    core.push_back(points[far]);
    b = exact_meb(core, dim);
  }
}

std::vector<Point> positives_of(std::span<const LabeledSample> batch) {
  std::vector<Point> pos;
  for (const LabeledSample& s : batch) {
    if (s.z == Label::positive) pos.push_back(s.x);
  }
  return pos;
}

}  // namespace

Ball min_enclosing_ball(std::span<const Point> points, const MebOptions& opts) {
  if (points.empty()) throw DomainError("min_enclosing_ball: no points");
  const int dim = static_cast<int>(points.front().size());
  Ball b = points.size() <= opts.exact_threshold ? exact_meb(points, dim) : coreset_meb(points, dim, opts);
  // Numerical slack from the Gram solve: make containment exact.
  for (const Point& p : points) b.radius = std::max(b.radius, (p - b.center).norm());
  return b;
}

SphereHypothesis fit_sphere(std::span<const LabeledSample> batch, const MebOptions& opts) {
  const std::vector<Point> pos = positives_of(batch);
  if (pos.empty()) throw NoPositives();
  return {min_enclosing_ball(pos, opts), LearnerKind::sphere, 0};
}

SphereHypothesis fit_sphere_oneside(std::span<const LabeledSample> batch, double margin, const MebOptions& opts) {
  SphereHypothesis h = fit_sphere(batch, opts);
  h.learner = LearnerKind::sphere_oneside;
  double nearest_negative = std::numeric_limits<double>::infinity();
  for (const LabeledSample& s : batch) {
    if (s.z == Label::negative) nearest_negative = std::min(nearest_negative, (s.x - h.ball.center).norm());
  }
  if (std::isfinite(nearest_negative)) {
    h.ball.radius = std::min(h.ball.radius, (1.0 - margin) * nearest_negative);
  }
  return h;
}

double training_error(const SphereHypothesis& h, std::span<const LabeledSample> batch) {
  if (batch.empty()) throw DomainError("training_error: empty batch");
  std::size_t wrong = 0;
  for (const LabeledSample& s : batch) wrong += (h.classify(s.x) != s.z);
  return static_cast<double>(wrong) / static_cast<double>(batch.size());
}

}  // namespace sal

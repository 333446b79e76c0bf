#pragma once

// Test-only reference computations. Plain std::vector arithmetic, no Eigen, so
// they stay independent of the library code they check.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

struct BallRef {
  Vec center;
  double radius = 0.0;
};

inline double dist2(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::optional<Vec> solve(std::vector<Vec> a, Vec b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-12) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Smallest ball with every point of `support` on its boundary, centered in
/// their affine hull.
inline std::optional<BallRef> circumball(const std::vector<Vec>& support) {
  const Vec& p0 = support.front();
  const std::size_t k = support.size() - 1;
  if (k == 0) return BallRef{p0, 0.0};
  std::vector<Vec> v(k, Vec(p0.size()));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < p0.size(); ++i) v[j][i] = support[j + 1][i] - p0[i];
  }
  std::vector<Vec> g(k, Vec(k));
  Vec rhs(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < p0.size(); ++i) dot += v[a][i] * v[b][i];
      g[a][b] = 2.0 * dot;
    }
    rhs[a] = g[a][a] / 2.0;
  }
  const auto coef = solve(g, rhs);
  if (!coef) return std::nullopt;
  Vec c = p0;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += (*coef)[j] * v[j][i];
  }
  return BallRef{c, std::sqrt(dist2(c, p0))};
}

/// Minimum enclosing ball by enumerating every support subset of size <= n + 1.
inline BallRef brute_force_meb(const std::vector<Vec>& points) {
  const std::size_t n = points.front().size();
  const std::size_t m = points.size();
  BallRef best{points.front(), std::numeric_limits<double>::infinity()};
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<Vec> support;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) support.push_back(points[i]);
    }
    if (support.size() > n + 1) continue;
    const auto ball = circumball(support);
    if (!ball || ball->radius >= best.radius) continue;
    bool covers = true;
    for (const Vec& p : points) covers = covers && std::sqrt(dist2(p, ball->center)) <= ball->radius + 1e-10;
    if (covers) best = *ball;
  }
  return best;
}

/// V_n(r) by the two-step recursion V_n = V_{n-2} 2 pi r^2 / n.
inline double ball_volume(int n, double r) {
  std::vector<double> v{1.0, 2.0 * r};
  for (int k = 2; k <= n; ++k) v.push_back(v[static_cast<std::size_t>(k) - 2] * 2.0 * M_PI * r * r / k);
  return v[static_cast<std::size_t>(n)];
}

/// Smallest k with (1 - p)^k <= delta, by direct accumulation.
inline long geometric_quantile(double p, double delta) {
  long k = 0;
  double survival = 1.0;
  while (survival > delta) {
    survival *= 1.0 - p;
    ++k;
  }
  return k;
}

}  // namespace oracle

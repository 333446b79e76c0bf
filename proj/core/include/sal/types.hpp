#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace sal {

using Point = Eigen::VectorXd;

/// Random stream used everywhere a draw happens. Always passed explicitly;
/// concurrent workers own independent streams.
using Rng = std::mt19937_64;

/// Input outside the solution space, or a measure that is undefined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid configuration handed to the engine or the harness.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Axis-aligned closed box [lower_i, upper_i].
class Box {
 public:
  Box(Point lower, Point upper);

  static Box unit(int n);      // [0,1]^n
  static Box centered(int n);  // [-1/2,1/2]^n

  int dimension() const { return static_cast<int>(lower_.size()); }
  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }
  bool contains(const Point& x) const;
  double volume() const;

 private:
  Point lower_;
  Point upper_;
};

}  // namespace sal

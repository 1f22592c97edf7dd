#pragma once

#include <Eigen/Dense>

namespace rbfsbp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Closed interval [left, right] with left < right.
struct Interval {
  double left = 0.0;
  double right = 1.0;

  double length() const { return right - left; }
  bool contains(double x) const { return x >= left && x <= right; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

}  // namespace rbfsbp

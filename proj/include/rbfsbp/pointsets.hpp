#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rbfsbp/types.hpp"

namespace rbfsbp {

enum class PointFamily { Equidistant, Halton, Random, Explicit };

std::string to_string(PointFamily family);
PointFamily point_family_from_string(const std::string& name);

/// Strictly increasing nodes inside a closed interval.
///
/// Construction enforces the invariants: sorted, distinct, inside the
/// interval, and when includes_endpoints() the first and last node are the
/// interval ends.
class PointSet {
 public:
  /// Validates and wraps user-supplied nodes. Unsorted input is sorted;
  /// duplicates and points outside the interval are rejected.
  static PointSet from_points(std::vector<double> points, Interval interval,
                              PointFamily family = PointFamily::Explicit);

  std::span<const double> points() const { return points_; }
  const std::vector<double>& values() const { return points_; }
  double operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const { return points_.size(); }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }

  const Interval& interval() const { return interval_; }
  PointFamily family() const { return family_; }
  bool includes_endpoints() const { return includes_endpoints_; }

  /// Largest gap between neighbouring nodes.
  double max_gap() const;

  Eigen::Map<const Vector> as_vector() const {
    return {points_.data(), static_cast<Eigen::Index>(points_.size())};
  }

 private:
  PointSet(std::vector<double> points, Interval interval, PointFamily family);

  std::vector<double> points_;
  Interval interval_;
  PointFamily family_;
  bool includes_endpoints_;
};

/// x_L + i (x_R - x_L)/(n-1), i = 0..n-1.
PointSet equidistant(int n, Interval interval);

/// i-th term (i >= 0) of the base-2 radical inverse (van der Corput) sequence.
double van_der_corput(std::uint64_t i);

/// van der Corput terms 1, 2, ... mapped onto the interval and sorted. With
/// include_endpoints the two interval ends replace two generated points.
PointSet halton(int n, Interval interval, bool include_endpoints);

/// Sorted uniform draws from SplitMix64(seed). Duplicates (and draws landing
/// exactly on an included endpoint) are redrawn.
PointSet random_points(int n, Interval interval, std::uint64_t seed, bool include_endpoints);

/// Dispatch on family; Explicit is not generatable and is rejected.
PointSet generate(PointFamily family, int n, Interval interval, std::uint64_t seed = 0,
                  bool include_endpoints = true);

}  // namespace rbfsbp

#include "rbfsbp/pointsets.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rbfsbp/errors.hpp"
#include "rbfsbp/splitmix.hpp"

namespace rbfsbp {

std::string to_string(PointFamily family) {
  switch (family) {
    case PointFamily::Equidistant:
      return "equidistant";
    case PointFamily::Halton:
      return "halton";
    case PointFamily::Random:
      return "random";
    case PointFamily::Explicit:
      return "explicit";
  }
  return "explicit";
}

PointFamily point_family_from_string(const std::string& name) {
  if (name == "equidistant") return PointFamily::Equidistant;
  if (name == "halton") return PointFamily::Halton;
  if (name == "random") return PointFamily::Random;
  if (name == "explicit") return PointFamily::Explicit;
  throw ConfigError("unknown point family '" + name + "'");
}

PointSet::PointSet(std::vector<double> points, Interval interval, PointFamily family)
    : points_(std::move(points)), interval_(interval), family_(family) {
  if (!(interval_.left < interval_.right)) {
    throw ContractError("point set: interval must satisfy left < right");
  }
  if (points_.empty()) throw ContractError("point set: no points");
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i]) || !interval_.contains(points_[i])) {
      throw ContractError("point set: point outside [x_L, x_R]");
    }
    if (i > 0 && !(points_[i] > points_[i - 1])) {
      throw ContractError("point set: duplicate points");
    }
  }
  includes_endpoints_ = points_.front() == interval_.left && points_.back() == interval_.right;
}

PointSet PointSet::from_points(std::vector<double> points, Interval interval, PointFamily family) {
  return PointSet(std::move(points), interval, family);
}

double PointSet::max_gap() const {
  // nominal spacing; recomputing it from rounded nodes can be off by an ulp
  if (family_ == PointFamily::Equidistant && includes_endpoints_) {
    return interval_.length() / static_cast<double>(points_.size() - 1);
  }
  double h = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) h = std::max(h, points_[i] - points_[i - 1]);
  return h;
}

PointSet equidistant(int n, Interval interval) {
  if (n < 2) throw ContractError("equidistant: n must be >= 2");
  std::vector<double> x(static_cast<std::size_t>(n));
  const double step = interval.length() / (n - 1);
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = interval.left + i * step;
  // pin the right end exactly; left + (n-1)*step can be off by one ulp
  x.back() = interval.right;
  return PointSet::from_points(std::move(x), interval, PointFamily::Equidistant);
}

double van_der_corput(std::uint64_t i) {
  double value = 0.0;
  double scale = 0.5;
  while (i != 0) {
    if (i & 1U) value += scale;
    i >>= 1U;
    scale *= 0.5;
  }
  return value;
}

PointSet halton(int n, Interval interval, bool include_endpoints) {
  if (n < 2) throw ContractError("halton: n must be >= 2");
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(n));
  const int generated = include_endpoints ? n - 2 : n;
  for (int i = 1; i <= generated; ++i) {
    x.push_back(interval.left + interval.length() * van_der_corput(static_cast<std::uint64_t>(i)));
  }
  if (include_endpoints) {
    x.push_back(interval.left);
    x.push_back(interval.right);
  }
  return PointSet::from_points(std::move(x), interval, PointFamily::Halton);
}

PointSet random_points(int n, Interval interval, std::uint64_t seed, bool include_endpoints) {
  if (n < 2) throw ContractError("random_points: n must be >= 2");
  SplitMix64 rng(seed);
  std::set<double> drawn;
  if (include_endpoints) {
    drawn.insert(interval.left);
    drawn.insert(interval.right);
  }
  while (drawn.size() < static_cast<std::size_t>(n)) {
    drawn.insert(rng.uniform(interval.left, interval.right));
  }
  return PointSet::from_points(std::vector<double>(drawn.begin(), drawn.end()), interval,
                               PointFamily::Random);
}

PointSet generate(PointFamily family, int n, Interval interval, std::uint64_t seed,
                  bool include_endpoints) {
  switch (family) {
    case PointFamily::Equidistant:
      return equidistant(n, interval);
    case PointFamily::Halton:
      return halton(n, interval, include_endpoints);
    case PointFamily::Random:
      return random_points(n, interval, seed, include_endpoints);
    case PointFamily::Explicit:
      break;
  }
  throw ConfigError("explicit point sets cannot be generated");
}

}  // namespace rbfsbp

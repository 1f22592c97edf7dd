#include "rbfsbp/rbf_space.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "rbfsbp/errors.hpp"

namespace rbfsbp {

namespace {

std::string hypothesis_summary(const Kernel& kernel, const PointSet& centers, int poly_degree) {
  std::ostringstream os;
  const int order = cpd_order(kernel);
  os << "kernel " << kernel.name() << " (cpd order " << order << "), K=" << centers.size()
     << " centers, polynomial degree " << poly_degree;
  if (poly_degree < order - 1) {
    os << "; violates degree >= order-1 (needs degree >= " << order - 1 << ")";
  }
  if (static_cast<int>(centers.size()) < poly_degree + 1) {
    os << "; violates m <= K (polynomial block overdetermined)";
  }
  return os.str();
}

}  // namespace

RbfSpace RbfSpace::build(const Kernel& kernel, const PointSet& centers, int poly_degree,
                         Interval domain, const SpaceOptions& options) {
  if (poly_degree < -1) throw ContractError("rbf space: polynomial degree must be >= -1");
  if (poly_degree == -1 && cpd_order(kernel) > 0) {
    throw ContractError("rbf space: kernel " + kernel.name() +
                        " is only conditionally positive definite; polynomial "
                        "augmentation (degree >= 0) is required");
  }
  const int K = static_cast<int>(centers.size());
  const int m = poly_degree + 1;
  if (K < m) {
    throw ContractError("rbf space: " + hypothesis_summary(kernel, centers, poly_degree));
  }
  if (!(domain.left < domain.right)) throw ContractError("rbf space: empty domain");
  for (double x : centers.points()) {
    if (!domain.contains(x)) throw ContractError("rbf space: center outside the domain");
  }

  RbfSpace space;
  space.kernel_ = kernel;
  space.centers_ = centers;
  space.poly_degree_ = poly_degree;
  space.domain_ = domain;
  space.meets_cpd_hypothesis_ = poly_degree >= cpd_order(kernel) - 1;
  if (!space.meets_cpd_hypothesis_) {
    space.warnings_.push_back("polynomial degree below cpd order - 1: " +
                              hypothesis_summary(kernel, centers, poly_degree));
  }

  const Matrix rows = space.basis_rows(centers.points());  // K x (K+m)
  space.saddle_ = Matrix::Zero(K + m, K + m);
  space.saddle_.topRows(K) = rows;
  space.saddle_.block(K, 0, m, K) = rows.rightCols(m).transpose();

  const Eigen::PartialPivLU<Matrix> lu(space.saddle_);
  const Vector pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double max_pivot = pivots.maxCoeff();
  if (!(max_pivot > 0.0) || !(pivots.minCoeff() >= options.pivot_tolerance * max_pivot)) {
    throw SingularSystemError("rbf space: saddle matrix is singular (relative pivot " +
                              std::to_string(pivots.minCoeff() / max_pivot) + "); " +
                              hypothesis_summary(kernel, centers, poly_degree));
  }
  const double rcond = lu.rcond();
  space.condition_estimate_ = rcond > 0.0 ? 1.0 / rcond : INFINITY;
  if (space.condition_estimate_ > options.condition_warning) {
    std::ostringstream os;
    os << "saddle matrix condition estimate " << space.condition_estimate_ << " exceeds "
       << options.condition_warning;
    space.warnings_.push_back(os.str());
  }

  const ExtMatrix ext_rows = space.ext_rows(centers.points(), false);
  ExtMatrix ext_saddle = ExtMatrix::Zero(K + m, K + m);
  ext_saddle.topRows(K) = ext_rows;
  ext_saddle.block(K, 0, m, K) = ext_rows.rightCols(m).transpose();
  space.ext_lu_.compute(ext_saddle);
  ExtMatrix rhs = ExtMatrix::Zero(K + m, K);
  rhs.topRows(K).setIdentity();
  space.cardinal_coeffs_ = space.ext_lu_.solve(rhs);
  return space;
}

double RbfSpace::poly(int l, double x) const {
  const double s = (2.0 * x - domain_.left - domain_.right) / domain_.length();
  return std::pow(s, l);
}

double RbfSpace::poly_dx(int l, double x) const {
  if (l == 0) return 0.0;
  const double s = (2.0 * x - domain_.left - domain_.right) / domain_.length();
  return l * std::pow(s, l - 1) * 2.0 / domain_.length();
}

Matrix RbfSpace::basis_rows(std::span<const double> xs) const {
  const int K = dimension();
  const int m = poly_terms();
  Matrix rows(static_cast<Eigen::Index>(xs.size()), K + m);
  for (std::size_t n = 0; n < xs.size(); ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    for (int k = 0; k < K; ++k) rows(i, k) = eval(kernel_, std::abs(xs[n] - centers_[k]));
    for (int l = 0; l < m; ++l) rows(i, K + l) = poly(l, xs[n]);
  }
  return rows;
}

Matrix RbfSpace::basis_dx_rows(std::span<const double> xs) const {
  const int K = dimension();
  const int m = poly_terms();
  Matrix rows(static_cast<Eigen::Index>(xs.size()), K + m);
  for (std::size_t n = 0; n < xs.size(); ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    for (int k = 0; k < K; ++k) rows(i, k) = eval_dx(kernel_, xs[n], centers_[k]);
    for (int l = 0; l < m; ++l) rows(i, K + l) = poly_dx(l, xs[n]);
  }
  return rows;
}

RbfSpace::ExtMatrix RbfSpace::ext_rows(std::span<const double> xs, bool derivative) const {
  const int K = dimension();
  const int m = poly_terms();
  const long double xl = domain_.left;
  const long double len = static_cast<long double>(domain_.right) - xl;
  ExtMatrix rows(static_cast<Eigen::Index>(xs.size()), K + m);
  for (std::size_t n = 0; n < xs.size(); ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    const long double x = xs[n];
    for (int k = 0; k < K; ++k) {
      const long double c = centers_[static_cast<std::size_t>(k)];
      rows(i, k) = derivative ? eval_dx_extended(kernel_, x, c) : eval_extended(kernel_, std::abs(x - c));
    }
    const long double s = 2.0L * (x - xl) / len - 1.0L;
    for (int l = 0; l < m; ++l) {
      if (!derivative) {
        rows(i, K + l) = std::pow(s, l);
      } else {
        rows(i, K + l) = l == 0 ? 0.0L : l * std::pow(s, l - 1) * 2.0L / len;
      }
    }
  }
  return rows;
}

Coefficients RbfSpace::interpolate(std::span<const double> values) const {
  const int K = dimension();
  const int m = poly_terms();
  if (static_cast<int>(values.size()) != K) {
    throw ContractError("interpolate: expected " + std::to_string(K) + " values, got " +
                        std::to_string(values.size()));
  }
  Vector rhs = Vector::Zero(K + m);
  for (int k = 0; k < K; ++k) rhs(k) = values[static_cast<std::size_t>(k)];
  const Vector sol = ext_lu_.solve(rhs.cast<long double>()).cast<double>();
  Coefficients c;
  c.alpha = sol.head(K);
  c.beta = sol.tail(m);
  const double scale = rhs.norm();
  c.relative_residual = (saddle_ * sol - rhs).norm() / (scale > 0.0 ? scale : 1.0);
  return c;
}

double RbfSpace::evaluate(const Coefficients& coeffs, double x) const {
  const std::array<double, 1> xs{x};
  const Matrix row = basis_rows(xs);
  const int K = dimension();
  return row.leftCols(K).row(0).dot(coeffs.alpha) + row.rightCols(poly_terms()).row(0).dot(coeffs.beta);
}

double RbfSpace::evaluate_dx(const Coefficients& coeffs, double x) const {
  const std::array<double, 1> xs{x};
  const Matrix row = basis_dx_rows(xs);
  const int K = dimension();
  return row.leftCols(K).row(0).dot(coeffs.alpha) + row.rightCols(poly_terms()).row(0).dot(coeffs.beta);
}

Matrix RbfSpace::cardinal_values(std::span<const double> xs) const {
  return (ext_rows(xs, false) * cardinal_coeffs_).cast<double>();
}

Matrix RbfSpace::cardinal_derivatives(std::span<const double> xs) const {
  return (ext_rows(xs, true) * cardinal_coeffs_).cast<double>();
}

RbfSpace build_space(const Kernel& kernel, const PointSet& centers, int poly_degree,
                     Interval domain, const SpaceOptions& options) {
  return RbfSpace::build(kernel, centers, poly_degree, domain, options);
}

Coefficients interpolate(const RbfSpace& space, std::span<const double> values) {
  return space.interpolate(values);
}

CardinalMatrices cardinal_matrices(const RbfSpace& space, const PointSet& grid) {
  return {space.cardinal_values(grid.points()), space.cardinal_derivatives(grid.points())};
}

}  // namespace rbfsbp

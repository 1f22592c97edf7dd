#pragma once

#include <span>
#include <string>
#include <vector>

#include "rbfsbp/kernels.hpp"
#include "rbfsbp/pointsets.hpp"
#include "rbfsbp/types.hpp"

namespace rbfsbp {

struct SpaceOptions {
  /// Smallest |U_ii| / max |U_ii| of the LU factor accepted as nonsingular.
  double pivot_tolerance = 1e-13;
  /// Condition estimates above this only produce a warning.
  double condition_warning = 1e12;
};

/// Coefficients of an interpolant: kernel weights (length K) and polynomial
/// weights (length m).
struct Coefficients {
  Vector alpha;
  Vector beta;
  /// ||A [alpha; beta] - [u; 0]|| / ||[u; 0]|| of the saddle system.
  double relative_residual = 0.0;
};

/// Cardinal basis values and derivatives on a grid: C(n,k) = c_k(y_n),
/// Cx(n,k) = c_k'(y_n).
struct CardinalMatrices {
  Matrix C;
  Matrix Cx;
};

/// The K-dimensional space spanned by phi(|x - x_k|) plus polynomials of
/// degree <= poly_degree, subject to the moment conditions
/// sum_k alpha_k p_l(x_k) = 0.
///
/// The polynomial block uses monomials in s = (2x - x_L - x_R)/(x_R - x_L).
/// The saddle matrix [[Phi, P], [P^T, 0]] is LU-factorized once; the
/// cardinal coefficients (one column per center) are solved at build time.
///
/// Cardinal coefficients and all evaluations through them are carried in
/// long double. Flat kernels on small blocks have coefficients many orders
/// larger than the function values, and double sums lose the digits the
/// quadrature exactness test needs. The singularity and condition checks use
/// the double factorization.
class RbfSpace {
 public:
  static RbfSpace build(const Kernel& kernel, const PointSet& centers, int poly_degree,
                        Interval domain, const SpaceOptions& options = {});

  const Kernel& kernel() const { return kernel_; }
  const PointSet& centers() const { return centers_; }
  int poly_degree() const { return poly_degree_; }
  /// Number m of polynomial terms.
  int poly_terms() const { return poly_degree_ + 1; }
  /// Dimension K of the space.
  int dimension() const { return static_cast<int>(centers_.size()); }
  const Interval& domain() const { return domain_; }
  bool contains_constants() const { return poly_degree_ >= 0; }

  /// Reciprocal of the LU condition estimate of the saddle matrix.
  double condition_estimate() const { return condition_estimate_; }
  /// poly_degree >= cpd_order(kernel) - 1.
  bool meets_cpd_hypothesis() const { return meets_cpd_hypothesis_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  Coefficients interpolate(std::span<const double> values) const;

  double evaluate(const Coefficients& coeffs, double x) const;
  double evaluate_dx(const Coefficients& coeffs, double x) const;

  /// Row n holds c_1(x_n) .. c_K(x_n).
  Matrix cardinal_values(std::span<const double> xs) const;
  Matrix cardinal_derivatives(std::span<const double> xs) const;

  double poly(int l, double x) const;
  double poly_dx(int l, double x) const;

 private:
  RbfSpace() = default;

  /// Rows [phi(|x-x_1|) .. phi(|x-x_K|), p_0(x) .. p_{m-1}(x)].
  Matrix basis_rows(std::span<const double> xs) const;
  Matrix basis_dx_rows(std::span<const double> xs) const;

  using ExtMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  ExtMatrix ext_rows(std::span<const double> xs, bool derivative) const;

  Kernel kernel_ = Kernel::phs_odd(2);
  PointSet centers_ = PointSet::from_points({0.0, 1.0}, {0.0, 1.0});
  int poly_degree_ = 0;
  Interval domain_;
  Matrix saddle_;
  Eigen::PartialPivLU<ExtMatrix> ext_lu_;
  ExtMatrix cardinal_coeffs_;  // (K+m) x K
  double condition_estimate_ = 0.0;
  bool meets_cpd_hypothesis_ = true;
  std::vector<std::string> warnings_;
};

RbfSpace build_space(const Kernel& kernel, const PointSet& centers, int poly_degree,
                     Interval domain, const SpaceOptions& options = {});

Coefficients interpolate(const RbfSpace& space, std::span<const double> values);

CardinalMatrices cardinal_matrices(const RbfSpace& space, const PointSet& grid);

}  // namespace rbfsbp

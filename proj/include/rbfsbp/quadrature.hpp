#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rbfsbp/errors.hpp"
#include "rbfsbp/pointsets.hpp"
#include "rbfsbp/rbf_space.hpp"
#include "rbfsbp/types.hpp"

namespace rbfsbp {

/// Generating set of the derivative product space: one entry per unordered
/// pair (k, l), k <= l, standing for (c_k c_l)'.
struct ProductMoments {
  std::vector<std::pair<int, int>> pairs;
  /// Exact integrals c_k(x_R) c_l(x_R) - c_k(x_L) c_l(x_L). With endpoint
  /// centers this is delta_kK delta_lK - delta_k1 delta_l1 up to rounding.
  Vector moments;
};

ProductMoments product_derivative_moments(const RbfSpace& space);

/// Row (k,l) of G holds (c_k' c_l + c_k c_l')(y_n), n = 1..N. Rows follow the
/// pair order of product_derivative_moments.
Matrix assemble_G(const RbfSpace& space, const PointSet& grid);
Matrix assemble_G(const CardinalMatrices& cardinals);

struct LeastSquaresResult {
  Vector weights;
  double residual = 0.0;    ///< ||G w - m||_2
  double min_weight = 0.0;  ///< min_n w_n
};

/// Minimum-norm least-squares solution via the pseudo-inverse, singular
/// values below 1e-12 * sigma_max treated as zero.
LeastSquaresResult least_squares_weights(const Matrix& G, const Vector& moments);

struct QuadratureRule {
  PointSet grid;
  Vector weights;
  double exactness_residual = 0.0;
  double min_weight = 0.0;
  /// Residual threshold the rule was judged against: 1e-10 (1 + ||m||_2).
  double tolerance = 0.0;

  bool exact() const { return exactness_residual <= tolerance; }
  bool positive() const { return min_weight > 0.0; }
  bool accepted() const { return exact() && positive(); }
};

/// Least-squares rule for the space on a given grid (accepted or not).
QuadratureRule least_squares_rule(const RbfSpace& space, const PointSet& grid);

/// How oversampled grids are generated on the space's domain. Endpoints are
/// always included.
struct GridSpec {
  PointFamily family = PointFamily::Equidistant;
  std::uint64_t seed = 0;
};

/// Thrown when no accepted rule was found up to n_max. Carries the rule with
/// the smallest residual among those with positive weights (or the smallest
/// residual overall when none was positive).
class QuadratureConstructionError : public Error {
 public:
  QuadratureConstructionError(const std::string& what, QuadratureRule best)
      : Error(what), best_(std::move(best)) {}
  const QuadratureRule& best() const { return best_; }

 private:
  QuadratureRule best_;
};

/// Grows N from n_start by one until the least-squares rule is exact and
/// positive.
QuadratureRule construct_positive_rule(const RbfSpace& space, const GridSpec& grid, int n_start,
                                       int n_max);

struct CollocationDiagnostic {
  double residual = 0.0;
  double min_weight = 0.0;
};

/// Least-squares rule with the grid equal to the centers.
CollocationDiagnostic collocation_diagnostic(const RbfSpace& space);

}  // namespace rbfsbp

#include "rbfsbp/quadrature.hpp"

#include <array>
#include <limits>
#include <optional>
#include <string>

namespace rbfsbp {

ProductMoments product_derivative_moments(const RbfSpace& space) {
  const int K = space.dimension();
  const Interval& dom = space.domain();
  // Evaluated rather than taken from the cardinal property at endpoint
  // centers: the computed cardinals of a badly conditioned space miss delta
  // by more than the exactness tolerance, and G is built from those.
  const std::array<double, 2> ends{dom.left, dom.right};
  const Matrix vals = space.cardinal_values(ends);
  const Vector left = vals.row(0).transpose();
  const Vector right = vals.row(1).transpose();

  ProductMoments out;
  out.pairs.reserve(static_cast<std::size_t>(K * (K + 1) / 2));
  out.moments.resize(K * (K + 1) / 2);
  Eigen::Index row = 0;
  for (int k = 0; k < K; ++k) {
    for (int l = k; l < K; ++l) {
      out.pairs.emplace_back(k, l);
      out.moments(row++) = right(k) * right(l) - left(k) * left(l);
    }
  }
  return out;
}

Matrix assemble_G(const CardinalMatrices& cardinals) {
  const Matrix& C = cardinals.C;
  const Matrix& Cx = cardinals.Cx;
  const auto N = C.rows();
  const auto K = C.cols();
  Matrix G(K * (K + 1) / 2, N);
  Eigen::Index row = 0;
  for (Eigen::Index k = 0; k < K; ++k) {
    for (Eigen::Index l = k; l < K; ++l) {
      G.row(row++) =
          (Cx.col(k).cwiseProduct(C.col(l)) + C.col(k).cwiseProduct(Cx.col(l))).transpose();
    }
  }
  return G;
}

Matrix assemble_G(const RbfSpace& space, const PointSet& grid) {
  return assemble_G(cardinal_matrices(space, grid));
}

LeastSquaresResult least_squares_weights(const Matrix& G, const Vector& moments) {
  if (G.rows() != moments.size()) throw ContractError("least_squares_weights: size mismatch");
  // one-sided Jacobi: the divide-and-conquer SVD misplaced clustered singular
  // values on some of these systems
  Eigen::JacobiSVD<Matrix> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);
  LeastSquaresResult r;
  r.weights = svd.solve(moments);
  r.residual = (G * r.weights - moments).norm();
  r.min_weight = r.weights.minCoeff();
  return r;
}

QuadratureRule least_squares_rule(const RbfSpace& space, const PointSet& grid) {
  const ProductMoments pm = product_derivative_moments(space);
  const Matrix G = assemble_G(space, grid);
  LeastSquaresResult ls = least_squares_weights(G, pm.moments);
  return QuadratureRule{grid, std::move(ls.weights), ls.residual, ls.min_weight,
                        1e-10 * (1.0 + pm.moments.norm())};
}

QuadratureRule construct_positive_rule(const RbfSpace& space, const GridSpec& grid, int n_start,
                                       int n_max) {
  const int K = space.dimension();
  if (n_start < K) {
    throw ContractError("construct_positive_rule: n_start (" + std::to_string(n_start) +
                        ") must be >= K (" + std::to_string(K) + ")");
  }
  std::optional<QuadratureRule> best;
  auto better = [](const QuadratureRule& a, const QuadratureRule& b) {
    if (a.positive() != b.positive()) return a.positive();
    return a.exactness_residual < b.exactness_residual;
  };
  for (int n = n_start; n <= n_max; ++n) {
    PointSet pts = generate(grid.family, n, space.domain(), grid.seed, true);
    QuadratureRule rule = least_squares_rule(space, pts);
    if (rule.accepted()) return rule;
    if (!best || better(rule, *best)) best = std::move(rule);
  }
  if (!best) {
    throw ContractError("construct_positive_rule: n_max < n_start");
  }
  throw QuadratureConstructionError(
      "no positive exact quadrature with N <= " + std::to_string(n_max) +
          " (best: N=" + std::to_string(best->grid.size()) +
          ", residual=" + std::to_string(best->exactness_residual) +
          ", min weight=" + std::to_string(best->min_weight) + ")",
      *best);
}

CollocationDiagnostic collocation_diagnostic(const RbfSpace& space) {
  const QuadratureRule rule = least_squares_rule(space, space.centers());
  return {rule.exactness_residual, rule.min_weight};
}

}  // namespace rbfsbp

#include "rbfsbp/sbp.hpp"

#include <cmath>

#include "rbfsbp/splitmix.hpp"

namespace rbfsbp {

SpaceDescriptor SpaceDescriptor::of(const RbfSpace& space) {
  return {space.kernel(), space.centers().values(), space.poly_degree(), space.domain()};
}

RbfSpace SpaceDescriptor::rebuild(const SpaceOptions& options) const {
  return RbfSpace::build(kernel, PointSet::from_points(centers, domain), poly_degree, domain,
                         options);
}

Matrix SbpOperator::B() const {
  Matrix b = Matrix::Zero(size(), size());
  b(0, 0) = -1.0;
  b(size() - 1, size() - 1) = 1.0;
  return b;
}

SbpOperator build_sbp(const RbfSpace& space, const QuadratureRule& rule,
                      const VerifyTolerances& tol) {
  const PointSet& grid = rule.grid;
  const int N = static_cast<int>(grid.size());
  const int K = space.dimension();
  if (rule.weights.size() != N) throw ContractError("build_sbp: weight count != grid size");
  if (!(rule.weights.minCoeff() > 0.0)) {
    throw ContractError("build_sbp: quadrature weights must be strictly positive");
  }
  if (!grid.includes_endpoints()) {
    throw ContractError("build_sbp: grid must include both domain endpoints");
  }

  const CardinalMatrices cm = cardinal_matrices(space, grid);
  Matrix B = Matrix::Zero(N, N);
  B(0, 0) = -1.0;
  B(N - 1, N - 1) = 1.0;
  const Matrix R = rule.weights.asDiagonal() * cm.Cx - 0.5 * B * cm.C;

  // unknowns: strictly lower entries Q_A(i,j), i > j; Q_A(j,i) = -Q_A(i,j)
  const int unknowns = N * (N - 1) / 2;
  Matrix A = Matrix::Zero(N * K, unknowns);
  Vector rhs(N * K);
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < K; ++k) rhs(i * K + k) = R(i, k);
  int p = 0;
  for (int i = 1; i < N; ++i) {
    for (int j = 0; j < i; ++j, ++p) {
      for (int k = 0; k < K; ++k) {
        A(i * K + k, p) += cm.C(j, k);
        A(j * K + k, p) -= cm.C(i, k);
      }
    }
  }
  Vector q;
  if (unknowns > 0) {
    // Jacobi SVD for the same reason as in least_squares_weights
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    q = svd.solve(rhs);
  }

  Matrix Q = 0.5 * B;
  p = 0;
  for (int i = 1; i < N; ++i) {
    for (int j = 0; j < i; ++j, ++p) {
      Q(i, j) += q(p);
      Q(j, i) -= q(p);
    }
  }

  SbpOperator op;
  op.grid = grid;
  op.weights = rule.weights;
  op.D = rule.weights.cwiseInverse().asDiagonal() * Q;
  op.Q = std::move(Q);
  op.space = SpaceDescriptor::of(space);
  op.kind = OperatorKind::Sbp;

  const SbpReport report = verify_sbp(op, space, tol);
  if (!report.passed()) {
    throw SbpVerificationError(
        "build_sbp: verification failed (exactness " + std::to_string(report.exactness_residual) +
            ", skew " + std::to_string(report.skew_residual) + ", min weight " +
            std::to_string(report.min_weight) + ")",
        report);
  }
  return op;
}

SbpReport verify_sbp(const SbpOperator& op, const RbfSpace& space, const VerifyTolerances& tol) {
  SbpReport r;
  const CardinalMatrices cm = cardinal_matrices(space, op.grid);
  const Matrix defect = op.D * cm.C - cm.Cx;
  r.exactness_residual = defect.cwiseAbs().maxCoeff();
  r.exactness_bound = tol.exactness * (1.0 + cm.Cx.cwiseAbs().rowwise().sum().maxCoeff());
  r.exactness_ok = r.exactness_residual <= r.exactness_bound;

  const Matrix skew = op.Q + op.Q.transpose() - op.B();
  r.skew_residual = skew.cwiseAbs().rowwise().sum().maxCoeff();
  r.skew_bound = tol.skew;
  r.skew_ok = r.skew_residual <= r.skew_bound;

  r.min_weight = op.weights.minCoeff();
  r.positivity_ok = r.min_weight > 0.0;

  r.constants_in_space = space.contains_constants();
  r.constant_residual = (op.D * Vector::Ones(op.size())).cwiseAbs().maxCoeff();
  r.constants_ok = !r.constants_in_space || r.constant_residual <= r.exactness_bound;
  return r;
}

IbpCheck discrete_ibp_check(const SbpOperator& op, const RbfSpace& space, int trials,
                            std::uint64_t seed) {
  const CardinalMatrices cm = cardinal_matrices(space, op.grid);
  const int K = space.dimension();
  const Matrix PD = op.weights.asDiagonal() * op.D;
  const Matrix B = op.B();
  const Matrix absQ = op.Q.cwiseAbs();
  SplitMix64 rng(seed);
  IbpCheck out;
  for (int t = 0; t < trials; ++t) {
    Vector a(K);
    Vector b(K);
    for (int k = 0; k < K; ++k) a(k) = rng.uniform(-1.0, 1.0);
    for (int k = 0; k < K; ++k) b(k) = rng.uniform(-1.0, 1.0);
    const Vector f = cm.C * a;
    const Vector g = cm.C * b;
    const double lhs = f.dot(PD * g) + (op.D * f).dot(op.weights.cwiseProduct(g));
    const double rhs = f.dot(B * g);
    out.max_defect = std::max(out.max_defect, std::abs(lhs - rhs));
    out.scale = std::max(out.scale, f.cwiseAbs().dot(absQ * g.cwiseAbs()));
  }
  return out;
}

SbpOperator collocation_operator(const RbfSpace& space) {
  const PointSet& grid = space.centers();
  const int N = static_cast<int>(grid.size());
  SbpOperator op;
  op.grid = grid;
  op.weights = Vector::Zero(N);
  for (int i = 0; i + 1 < N; ++i) {
    const double half = 0.5 * (grid[static_cast<std::size_t>(i + 1)] - grid[static_cast<std::size_t>(i)]);
    op.weights(i) += half;
    op.weights(i + 1) += half;
  }
  op.D = space.cardinal_derivatives(grid.points());
  op.Q = op.weights.asDiagonal() * op.D;
  op.space = SpaceDescriptor::of(space);
  op.kind = OperatorKind::Collocation;
  return op;
}

SbpOperator map_operator(const SbpOperator& op, Interval target) {
  if (!(target.left < target.right)) throw ContractError("map_operator: empty target interval");
  const Interval& src = op.grid.interval();
  const double ratio = target.length() / src.length();
  std::vector<double> x(op.grid.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    x[n] = target.left + (op.grid[n] - src.left) * ratio;
  }
  // pin the ends so neighbouring blocks share interface coordinates exactly
  if (op.grid.front() == src.left) x.front() = target.left;
  if (op.grid.back() == src.right) x.back() = target.right;
  SbpOperator out;
  out.grid = PointSet::from_points(std::move(x), target, op.grid.family());
  out.weights = op.weights * ratio;
  out.Q = op.Q;
  out.D = out.weights.cwiseInverse().asDiagonal() * out.Q;
  out.space = op.space;
  out.kind = op.kind;
  return out;
}

OperatorBuild construct_operator(const Kernel& kernel, const PointSet& centers, int poly_degree,
                                 const GridSpec& grid, int n_max, const SpaceOptions& options) {
  RbfSpace space = build_space(kernel, centers, poly_degree, centers.interval(), options);
  QuadratureRule rule = construct_positive_rule(space, grid, space.dimension(), n_max);
  SbpOperator op = build_sbp(space, rule);
  return {std::move(space), std::move(rule), std::move(op)};
}

}  // namespace rbfsbp

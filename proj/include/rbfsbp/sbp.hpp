#pragma once

#include <cstdint>
#include <vector>

#include "rbfsbp/errors.hpp"
#include "rbfsbp/kernels.hpp"
#include "rbfsbp/pointsets.hpp"
#include "rbfsbp/quadrature.hpp"
#include "rbfsbp/rbf_space.hpp"
#include "rbfsbp/types.hpp"

namespace rbfsbp {

/// Enough to rebuild the RbfSpace an operator was constructed for.
struct SpaceDescriptor {
  Kernel kernel = Kernel::phs_odd(2);
  std::vector<double> centers;
  int poly_degree = 0;
  Interval domain;

  static SpaceDescriptor of(const RbfSpace& space);
  RbfSpace rebuild(const SpaceOptions& options = {}) const;
};

enum class OperatorKind {
  Sbp,          ///< verified diagonal-norm RBFSBP operator
  Collocation,  ///< classical collocation D = C_x on the centers; not SBP
};

/// Diagonal-norm operator D = P^{-1} Q on a grid with endpoints.
///
/// `space` describes the space the operator was constructed for. When its
/// domain differs from grid.interval() the operator is the affine image of
/// one built on that reference interval (see map_operator).
struct SbpOperator {
  PointSet grid = PointSet::from_points({0.0, 1.0}, {0.0, 1.0});
  Vector weights;  ///< diagonal of P
  Matrix Q;
  Matrix D;
  SpaceDescriptor space;
  OperatorKind kind = OperatorKind::Sbp;

  int size() const { return static_cast<int>(weights.size()); }
  Matrix P() const { return weights.asDiagonal(); }
  /// diag(-1, 0, ..., 0, 1)
  Matrix B() const;
};

struct VerifyTolerances {
  /// exactness residual bound is exactness * (1 + ||C_x||_inf)
  double exactness = 1e-8;
  double skew = 1e-12;
};

struct SbpReport {
  double exactness_residual = 0.0;  ///< max_k ||D c_k(y) - c_k'(y)||_inf
  double exactness_bound = 0.0;
  double skew_residual = 0.0;  ///< ||Q + Q^T - B||_inf
  double skew_bound = 0.0;
  double min_weight = 0.0;
  bool constants_in_space = false;
  double constant_residual = 0.0;  ///< ||D 1||_inf

  bool exactness_ok = false;
  bool skew_ok = false;
  bool positivity_ok = false;
  bool constants_ok = true;  ///< vacuous when constants are not in the space

  bool passed() const { return exactness_ok && skew_ok && positivity_ok && constants_ok; }
};

class SbpVerificationError : public Error {
 public:
  SbpVerificationError(const std::string& what, SbpReport report)
      : Error(what), report_(report) {}
  const SbpReport& report() const { return report_; }

 private:
  SbpReport report_;
};

/// P = diag(w); Q_A from the least-squares system Q_A C = P C_x - B C / 2
/// over antisymmetric matrices (minimum-norm); Q = Q_A + B/2; D = P^{-1} Q.
/// The result is verified before it is returned.
SbpOperator build_sbp(const RbfSpace& space, const QuadratureRule& rule,
                      const VerifyTolerances& tol = {});

SbpReport verify_sbp(const SbpOperator& op, const RbfSpace& space,
                     const VerifyTolerances& tol = {});

struct IbpCheck {
  double max_defect = 0.0;
  /// max over trials of |f|^T |Q| |g| (at least 1); the magnitude the
  /// defect should be compared with.
  double scale = 1.0;
};

/// max over random f, g in the space of |f^T P D g + (D f)^T P g - f^T B g|.
IbpCheck discrete_ibp_check(const SbpOperator& op, const RbfSpace& space, int trials,
                            std::uint64_t seed = 1);

/// Classical collocation operator: grid = centers, D = C_x, trapezoidal
/// weights, Q = P D. Provided only to reproduce the instability of
/// collocation RBF methods.
SbpOperator collocation_operator(const RbfSpace& space);

/// Affine image of an operator on another interval: nodes mapped, weights
/// scaled by the length ratio, Q unchanged, D = P^{-1} Q. The SBP properties
/// carry over exactly; exactness holds for the mapped space, i.e. kernels
/// whose shape parameter is measured in reference coordinates.
SbpOperator map_operator(const SbpOperator& op, Interval target);

/// Space + positive rule + operator in one call.
struct OperatorBuild {
  RbfSpace space;
  QuadratureRule rule;
  SbpOperator op;
};

OperatorBuild construct_operator(const Kernel& kernel, const PointSet& centers, int poly_degree,
                                 const GridSpec& grid, int n_max,
                                 const SpaceOptions& options = {});

}  // namespace rbfsbp

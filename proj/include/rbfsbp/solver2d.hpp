#pragma once

#include <functional>

#include "rbfsbp/block_grid.hpp"
#include "rbfsbp/types.hpp"

namespace rbfsbp {

/// Tensor-product layout: node (ix, iy) of the global x and y block grids is
/// stored at ix * gridy.size() + iy. Interface nodes are duplicated in each
/// direction, exactly as in 1D.
struct TensorGrid {
  BlockGrid x;
  BlockGrid y;

  int size() const { return x.size() * y.size(); }
  int index(int ix, int iy) const { return ix * y.size() + iy; }
};

struct SolveConfig2d {
  double a = 1.0;
  double b = 1.0;
  /// Inflow data on the x-inflow face, g(y, t); used on a Line x-topology.
  std::function<double(double y, double t)> inflow_x;
  /// Inflow data on the y-inflow face, g(x, t); used on a Line y-topology.
  std::function<double(double x, double t)> inflow_y;
};

/// u_t = -a (D_x (x) I) u - b (I (x) D_y) u + SATs. Each grid line carries the
/// 1D upwind SATs; with P = P_x (x) P_y the transverse weights cancel against
/// the P^{-1} scaling, so the line operators are exactly the 1D ones.
Vector advection2d_rhs(const TensorGrid& grid, const SolveConfig2d& cfg, const Vector& u,
                       double t);

/// sum_{ix, iy} wx_ix wy_iy u^2
double energy2d(const TensorGrid& grid, const Vector& u);

/// Samples f(x, y) at every node.
Vector sample2d(const TensorGrid& grid, const std::function<double(double, double)>& f);

}  // namespace rbfsbp

#include "rbfsbp/solver2d.hpp"

#include "rbfsbp/errors.hpp"
#include "rbfsbp/solver.hpp"

namespace rbfsbp {

Vector advection2d_rhs(const TensorGrid& grid, const SolveConfig2d& cfg, const Vector& u,
                       double t) {
  if (u.size() != grid.size()) throw ContractError("advection2d_rhs: state size mismatch");
  const int nx = grid.x.size();
  const int ny = grid.y.size();
  const Vector xs = grid.x.nodes();
  const Vector ys = grid.y.nodes();
  Vector rhs = Vector::Zero(u.size());

  // x-lines: fixed iy, stride ny
  Vector line(nx);
  for (int iy = 0; iy < ny; ++iy) {
    SolveConfig c;
    c.a = cfg.a;
    if (cfg.inflow_x) {
      const double y = ys(iy);
      c.g_left = c.g_right = [&cfg, y](double s) { return cfg.inflow_x(y, s); };
    }
    for (int ix = 0; ix < nx; ++ix) line(ix) = u(grid.index(ix, iy));
    const Vector r = advection_rhs(grid.x, c, line, t);
    for (int ix = 0; ix < nx; ++ix) rhs(grid.index(ix, iy)) += r(ix);
  }
  // y-lines: fixed ix, contiguous
  for (int ix = 0; ix < nx; ++ix) {
    SolveConfig c;
    c.a = cfg.b;
    if (cfg.inflow_y) {
      const double x = xs(ix);
      c.g_left = c.g_right = [&cfg, x](double s) { return cfg.inflow_y(x, s); };
    }
    const Vector r = advection_rhs(grid.y, c, u.segment(grid.index(ix, 0), ny), t);
    rhs.segment(grid.index(ix, 0), ny) += r;
  }
  return rhs;
}

double energy2d(const TensorGrid& grid, const Vector& u) {
  if (u.size() != grid.size()) throw ContractError("energy2d: state size mismatch");
  const Vector wx = grid.x.weights();
  const Vector wy = grid.y.weights();
  double e = 0.0;
  for (int ix = 0; ix < grid.x.size(); ++ix) {
    const auto col = u.segment(grid.index(ix, 0), grid.y.size());
    e += wx(ix) * col.dot(wy.cwiseProduct(col));
  }
  return e;
}

Vector sample2d(const TensorGrid& grid, const std::function<double(double, double)>& f) {
  const Vector xs = grid.x.nodes();
  const Vector ys = grid.y.nodes();
  Vector u(grid.size());
  for (int ix = 0; ix < xs.size(); ++ix)
    for (int iy = 0; iy < ys.size(); ++iy) u(grid.index(ix, iy)) = f(xs(ix), ys(iy));
  return u;
}

}  // namespace rbfsbp

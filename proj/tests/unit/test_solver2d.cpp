#include <doctest.h>

#include <cmath>

#include "rbfsbp/solver.hpp"
#include "rbfsbp/solver2d.hpp"
#include "rbfsbp/splitmix.hpp"

using namespace rbfsbp;

namespace {

BlockGrid line_grid(Topology topo) {
  BlockLayout l;
  l.centers_per_block = 4;
  l.block_count = 2;
  l.topology = topo;
  return build_block_grid(l);
}

}  // namespace

TEST_SUITE("solver2d") {

TEST_CASE("tensor indexing") {
  const TensorGrid g{line_grid(Topology::Ring), line_grid(Topology::Ring)};
  CHECK(g.size() == g.x.size() * g.y.size());
  CHECK(g.index(1, 2) == g.y.size() + 2);
}

TEST_CASE("constants are steady on the torus") {
  const TensorGrid g{line_grid(Topology::Ring), line_grid(Topology::Ring)};
  SolveConfig2d cfg;
  const Vector r = advection2d_rhs(g, cfg, Vector::Ones(g.size()), 0.0);
  CHECK(r.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(energy2d(g, Vector::Ones(g.size())) ==
        doctest::Approx(g.x.weights().sum() * g.y.weights().sum()));
}

TEST_CASE("torus semi-discretization does not create energy") {
  const TensorGrid g{line_grid(Topology::Ring), line_grid(Topology::Ring)};
  SolveConfig2d cfg;
  cfg.a = 1.0;
  cfg.b = -0.6;
  SplitMix64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    Vector u(g.size());
    for (int i = 0; i < u.size(); ++i) u(i) = rng.uniform(-1, 1);
    const Vector r = advection2d_rhs(g, cfg, u, 0.0);
    const double dt = 1e-7;
    CHECK(energy2d(g, u + dt * r) - energy2d(g, u) <= 1e-12);
  }
}

TEST_CASE("x-only advection reduces to the 1D operator on each line") {
  const TensorGrid g{line_grid(Topology::Ring), line_grid(Topology::Ring)};
  SolveConfig2d cfg;
  cfg.a = 1.0;
  cfg.b = 0.0;
  const Vector u = sample2d(g, [](double x, double y) { return std::sin(6 * x) * (1 + y); });
  const Vector r = advection2d_rhs(g, cfg, u, 0.0);
  const Vector x = g.x.nodes();
  const Vector y = g.y.nodes();
  SolveConfig c1;
  Vector line(g.x.size());
  const int iy = 3;
  for (int ix = 0; ix < g.x.size(); ++ix) line(ix) = u(g.index(ix, iy));
  const Vector r1 = advection_rhs(g.x, c1, line, 0.0);
  for (int ix = 0; ix < g.x.size(); ++ix) CHECK(r(g.index(ix, iy)) == doctest::Approx(r1(ix)));
  CHECK(u(g.index(2, iy)) == doctest::Approx(std::sin(6 * x(2)) * (1 + y(iy))));
}

TEST_CASE("line topology needs inflow functions") {
  const TensorGrid g{line_grid(Topology::Line), line_grid(Topology::Ring)};
  SolveConfig2d cfg;
  CHECK_THROWS(advection2d_rhs(g, cfg, Vector::Zero(g.size()), 0.0));
  cfg.inflow_x = [](double, double) { return 0.0; };
  CHECK_NOTHROW(advection2d_rhs(g, cfg, Vector::Zero(g.size()), 0.0));
}

}

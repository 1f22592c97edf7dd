#include <doctest.h>

#include "rbfsbp/block_grid.hpp"

using namespace rbfsbp;

TEST_SUITE("block_grid") {

TEST_CASE("uniform cubic layout") {
  BlockLayout l;
  l.kernel = Kernel::phs_odd(2);
  l.centers_per_block = 3;
  l.domain = {0, 1};
  l.block_count = 4;
  l.topology = Topology::Ring;
  const BlockGrid g = build_block_grid(l);
  CHECK(g.block_count() == 4);
  // three cubic centers are integrated exactly on the centers themselves
  CHECK(g.size() == 12);
  CHECK(g.offset(2) == 6);
  CHECK(g.domain() == Interval{0, 1});
  CHECK(g.block(1).grid.front() == g.block(0).grid.back());
  CHECK(g.h() == doctest::Approx(0.125));
  CHECK(g.weights().sum() == doctest::Approx(1.0));
  const Vector x = g.nodes();
  CHECK(x(2) == x(3));
}

TEST_CASE("oversampled blocks") {
  BlockLayout l;
  l.centers_per_block = 5;
  l.block_count = 2;
  const BlockGrid g = build_block_grid(l);
  CHECK(g.block_size(0) > 5);
  CHECK(g.block_size(0) == g.block_size(1));
  CHECK(g.h_min() <= g.h());
}

TEST_CASE("mismatched interfaces are rejected") {
  const OperatorBuild a = construct_operator(Kernel::phs_odd(2), equidistant(3, {0, 1}), 0, {}, 20);
  const OperatorBuild b =
      construct_operator(Kernel::phs_odd(2), equidistant(3, {1.1, 2}), 0, {}, 20);
  CHECK_THROWS_AS(BlockGrid::from_operators({a.op, b.op}, Topology::Line), ContractError);
  CHECK_THROWS_AS(BlockGrid::from_operators({}, Topology::Line), ContractError);
}

TEST_CASE("reference mapping matches direct construction for PHS") {
  BlockLayout l;
  l.centers_per_block = 4;
  l.domain = {-1, 1};
  l.block_count = 5;
  const BlockGrid direct = build_block_grid(l);
  l.map_from_reference = true;
  const BlockGrid mapped = build_block_grid(l);
  // the cubic kernel is scale invariant up to a constant, so the operators agree
  CHECK((direct.weights() - mapped.weights()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((direct.block(2).D - mapped.block(2).D).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("random centers give distinct per-block operators") {
  BlockLayout l;
  l.centers_per_block = 4;
  l.block_count = 3;
  l.center_family = PointFamily::Random;
  l.center_seed = 4;
  const BlockGrid g = build_block_grid(l);
  CHECK(g.block(0).space.centers != g.block(1).space.centers);
}

TEST_CASE("collocation grid") {
  BlockLayout l;
  l.kernel = Kernel::gaussian(1.0);
  l.poly_degree = -1;
  l.centers_per_block = 8;
  l.topology = Topology::Ring;
  const BlockGrid g = collocation_grid(l);
  CHECK(g.block_count() == 1);
  CHECK(g.size() == 8);
  CHECK(g.block(0).kind == OperatorKind::Collocation);
}

}

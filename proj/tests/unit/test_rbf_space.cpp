#include <doctest.h>

#include <array>
#include <cmath>

#include "rbfsbp/errors.hpp"
#include "rbfsbp/rbf_space.hpp"
#include "rbfsbp/splitmix.hpp"

using namespace rbfsbp;

namespace {

RbfSpace cubic_space() {
  return build_space(Kernel::phs_odd(2), PointSet::from_points({0.0, 0.5, 1.0}, {0.0, 1.0}), 0,
                     {0.0, 1.0});
}

}  // namespace

TEST_SUITE("rbf_space") {

TEST_CASE("cubic cardinal c1 coefficients") {
  const RbfSpace s = cubic_space();
  const std::array<double, 3> e1{1.0, 0.0, 0.0};
  const Coefficients c = s.interpolate(e1);
  CHECK(c.alpha(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.alpha(1) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(c.alpha(2) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(c.beta(0) == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(c.relative_residual < 1e-10);
  CHECK_FALSE(s.meets_cpd_hypothesis());
  CHECK_FALSE(s.warnings().empty());
}

TEST_CASE("cubic cardinal derivative at the left end") {
  const RbfSpace s = cubic_space();
  const std::array<double, 1> x0{0.0};
  CHECK(s.cardinal_derivatives(x0)(0, 0) == doctest::Approx(-3.0).epsilon(1e-12));
  const std::array<double, 1> x1{1.0};
  CHECK(std::abs(s.cardinal_values(x1)(0, 0)) < 1e-14);
}

TEST_CASE("gaussian cardinal c1 coefficients") {
  const RbfSpace s = build_space(Kernel::gaussian(1.0),
                                 PointSet::from_points({0.0, 0.5, 1.0}, {0.0, 1.0}), 0, {0.0, 1.0});
  const std::array<double, 3> e1{1.0, 0.0, 0.0};
  const Coefficients c = s.interpolate(e1);
  CHECK(c.alpha(0) == doctest::Approx(2.7698046587889401).epsilon(1e-10));
  CHECK(c.alpha(1) == doctest::Approx(-3.9576326107085537).epsilon(1e-10));
  CHECK(c.alpha(2) == doctest::Approx(1.1878279519196136).epsilon(1e-10));
  CHECK(c.beta(0) == doctest::Approx(0.87542523437980365).epsilon(1e-10));
  CHECK(s.meets_cpd_hypothesis());
}

TEST_CASE("cardinal matrices on the centers are the identity") {
  const RbfSpace s = build_space(Kernel::multiquadric(1.0), halton(6, {0.0, 2.0}, true), 1,
                                 {0.0, 2.0});
  const CardinalMatrices cm = cardinal_matrices(s, s.centers());
  CHECK((cm.C - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partition of unity with constants") {
  const RbfSpace s = build_space(Kernel::phs_odd(2), equidistant(5, {-1.0, 1.0}), 1, {-1.0, 1.0});
  const CardinalMatrices cm = cardinal_matrices(s, equidistant(17, {-1.0, 1.0}));
  CHECK((cm.C.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
  CHECK(cm.Cx.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("polynomial reproduction") {
  const RbfSpace s = build_space(Kernel::phs_odd(2), equidistant(6, {0.0, 1.0}), 1, {0.0, 1.0});
  std::array<double, 6> ones{};
  ones.fill(1.0);
  const Coefficients c1 = s.interpolate(ones);
  CHECK(c1.alpha.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(c1.beta(0) == doctest::Approx(1.0));
  std::array<double, 6> lin{};
  for (std::size_t k = 0; k < 6; ++k) lin[k] = s.centers()[k];
  const Coefficients c2 = s.interpolate(lin);
  CHECK(c2.alpha.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(s.evaluate(c2, 0.37) == doctest::Approx(0.37));
  CHECK(s.evaluate_dx(c2, 0.37) == doctest::Approx(1.0));
}

TEST_CASE("moment conditions hold for interpolants") {
  SplitMix64 rng(3);
  const RbfSpace s = build_space(Kernel::phs_odd(2), halton(9, {0.0, 1.0}, true), 2, {0.0, 1.0});
  std::array<double, 9> u{};
  for (double& v : u) v = rng.uniform(-1.0, 1.0);
  const Coefficients c = s.interpolate(u);
  for (int l = 0; l < 3; ++l) {
    double moment = 0.0;
    for (int k = 0; k < 9; ++k) moment += c.alpha(k) * s.poly(l, s.centers()[static_cast<std::size_t>(k)]);
    CHECK(std::abs(moment) <= 1e-10 * c.alpha.norm());
  }
  for (std::size_t k = 0; k < 9; ++k) {
    CHECK(s.evaluate(c, s.centers()[k]) == doctest::Approx(u[k]).epsilon(1e-10));
  }
}

TEST_CASE("cardinal derivatives agree with finite differences") {
  const RbfSpace s = build_space(Kernel::gaussian(2.0), equidistant(5, {0.0, 1.0}), 0, {0.0, 1.0});
  const double h = 1e-6;
  for (double x : {0.13, 0.41, 0.77}) {
    const std::array<double, 3> xs{x - h, x, x + h};
    const Matrix C = s.cardinal_values(xs);
    const Matrix Cx = s.cardinal_derivatives(xs);
    for (int k = 0; k < 5; ++k) {
      const double fd = (C(2, k) - C(0, k)) / (2 * h);
      CHECK(Cx(1, k) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("invalid spaces are rejected") {
  const PointSet c = equidistant(3, {0.0, 1.0});
  CHECK_THROWS_AS(build_space(Kernel::phs_odd(2), c, -1, {0.0, 1.0}), ContractError);
  CHECK_THROWS_AS(build_space(Kernel::phs_odd(2), c, -2, {0.0, 1.0}), ContractError);
  CHECK_THROWS_AS(build_space(Kernel::phs_odd(2), c, 3, {0.0, 1.0}), ContractError);
  CHECK_THROWS_AS(build_space(Kernel::gaussian(1.0), c, 0, {0.2, 1.0}), ContractError);
  const std::array<double, 2> wrong{1.0, 2.0};
  CHECK_THROWS_AS(build_space(Kernel::gaussian(1.0), c, 0, {0.0, 1.0}).interpolate(wrong),
                  ContractError);
}

TEST_CASE("nearly singular saddle systems fail the pivot check") {
  // 20 flat Gaussians on [-1, 1]: relative pivot about 4e-14
  const PointSet c = equidistant(20, {-1.0, 1.0});
  CHECK_THROWS_AS(build_space(Kernel::gaussian(1.0), c, -1, {-1.0, 1.0}), SingularSystemError);
  SpaceOptions relaxed;
  relaxed.pivot_tolerance = 1e-16;
  const RbfSpace s = build_space(Kernel::gaussian(1.0), c, -1, {-1.0, 1.0}, relaxed);
  CHECK(s.condition_estimate() > 1e12);
  CHECK_FALSE(s.warnings().empty());
}

TEST_CASE("random admissible spaces are nonsingular") {
  SplitMix64 rng(11);
  int built = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int K = 3 + static_cast<int>(rng.next() % 8);
    const int family = static_cast<int>(rng.next() % 3);
    const Kernel k = family == 0   ? Kernel::phs_odd(2)
                     : family == 1 ? Kernel::multiquadric(rng.uniform(0.5, 3.0))
                                   : Kernel::gaussian(rng.uniform(2.0, 6.0));
    const int degree = std::max(cpd_order(k) - 1, 0) + static_cast<int>(rng.next() % 2);
    const PointSet c = random_points(K, {0.0, 1.0}, rng.next(), true);
    if (degree + 1 > K) continue;
    CHECK_NOTHROW(build_space(k, c, degree, {0.0, 1.0}));
    ++built;
  }
  CHECK(built > 150);
}

}

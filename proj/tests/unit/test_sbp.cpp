#include <doctest.h>

#include <cmath>

#include "rbfsbp/sbp.hpp"
#include "rbfsbp/splitmix.hpp"

using namespace rbfsbp;

namespace {

// three cubic centers on [0, 1] with the four-point equidistant grid
OperatorBuild cubic() {
  RbfSpace space =
      build_space(Kernel::phs_odd(2), PointSet::from_points({0, 0.5, 1}, {0, 1}), 0, {0, 1});
  QuadratureRule rule = least_squares_rule(space, equidistant(4, {0, 1}));
  SbpOperator op = build_sbp(space, rule);
  return {std::move(space), std::move(rule), std::move(op)};
}

}  // namespace

TEST_SUITE("sbp") {

TEST_CASE("cubic operator against exact rational values") {
  const SbpOperator op = cubic().op;
  REQUIRE(op.size() == 4);
  CHECK(op.Q(0, 0) == doctest::Approx(-0.5));
  CHECK(op.Q(0, 1) == doctest::Approx(27.0 / 46.0).epsilon(1e-12));
  CHECK(op.Q(0, 2) == doctest::Approx(-0.15015166835187058).epsilon(1e-10));
  CHECK(op.Q(0, 3) == doctest::Approx(0.063195146612740142).epsilon(1e-10));
  CHECK(op.Q(1, 2) == doctest::Approx(0.73710819009100101).epsilon(1e-10));
  CHECK(op.D(0, 0) == doctest::Approx(-129.0 / 32.0).epsilon(1e-12));
  CHECK(op.D(0, 1) == doctest::Approx(4.7323369565217391).epsilon(1e-10));
  CHECK(op.D(1, 0) == doctest::Approx(-1.5579710144927536).epsilon(1e-10));
  CHECK(op.D(1, 3) == doctest::Approx(-0.39855072463768116).epsilon(1e-10));
}

TEST_CASE("the norm does not integrate constants exactly") {
  CHECK(cubic().op.weights.sum() == doctest::Approx(2 * 16.0 / 129 + 2 * 81.0 / 215));
  CHECK(cubic().op.weights.sum() == doctest::Approx(1.0016).epsilon(1e-4));
}

TEST_CASE("searching from N = K finds the Simpson rule for three cubic centers") {
  const OperatorBuild b = construct_operator(
      Kernel::phs_odd(2), PointSet::from_points({0, 0.5, 1}, {0, 1}), 0, {}, 20);
  REQUIRE(b.op.size() == 3);
  CHECK(b.op.weights(0) == doctest::Approx(1.0 / 6.0));
  CHECK(b.op.weights(1) == doctest::Approx(2.0 / 3.0));
  CHECK(verify_sbp(b.op, b.space).passed());
}

TEST_CASE("verification of a constructed operator") {
  const OperatorBuild b = cubic();
  const SbpReport r = verify_sbp(b.op, b.space);
  CHECK(r.passed());
  CHECK(r.skew_residual <= 1e-12);
  CHECK(r.constants_in_space);
  CHECK(r.constant_residual < 1e-12);
  CHECK(r.min_weight > 0);
  CHECK(((b.op.Q + b.op.Q.transpose()) - b.op.B()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("discrete integration by parts") {
  const OperatorBuild b = cubic();
  const IbpCheck c = discrete_ibp_check(b.op, b.space, 100, 5);
  CHECK(c.max_defect <= 1e-8 * c.scale);
}

TEST_CASE("tampered operators fail verification") {
  const OperatorBuild b = cubic();
  SbpOperator bad = b.op;
  bad.Q(1, 2) += 1e-6;
  bad.D = bad.weights.cwiseInverse().asDiagonal() * bad.Q;
  const SbpReport r = verify_sbp(bad, b.space);
  CHECK_FALSE(r.skew_ok);
  CHECK_FALSE(r.passed());

  SbpOperator neg = b.op;
  neg.weights(1) = -neg.weights(1);
  CHECK_FALSE(verify_sbp(neg, b.space).positivity_ok);
}

TEST_CASE("oversampled operators for several kernels and degrees") {
  struct Case {
    Kernel kernel;
    int K;
    int degree;
  };
  const Case cases[] = {{Kernel::phs_odd(2), 5, 0},     {Kernel::phs_odd(2), 6, 1},
                        {Kernel::phs_odd(3), 5, 2},     {Kernel::gaussian(3.0), 5, 0},
                        {Kernel::multiquadric(2.0), 5, 0}, {Kernel::phs_even(1), 4, 1}};
  for (const Case& c : cases) {
    CAPTURE(c.kernel.name());
    CAPTURE(c.degree);
    const OperatorBuild b =
        construct_operator(c.kernel, equidistant(c.K, {-1, 1}), c.degree, {}, 60);
    CHECK(b.op.size() >= c.K);
    CHECK(verify_sbp(b.op, b.space).passed());
    // D differentiates every cardinal function exactly on the grid
    const CardinalMatrices cm = cardinal_matrices(b.space, b.op.grid);
    CHECK((b.op.D * cm.C - cm.Cx).cwiseAbs().maxCoeff() < 1e-7 * (1 + cm.Cx.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("collocation operator is not SBP") {
  const RbfSpace s = build_space(Kernel::gaussian(1.0), equidistant(10, {-1, 1}), -1, {-1, 1});
  const SbpOperator op = collocation_operator(s);
  CHECK(op.kind == OperatorKind::Collocation);
  CHECK(op.size() == 10);
  CHECK(((op.Q + op.Q.transpose()) - op.B()).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("mapped operators keep the SBP structure") {
  const SbpOperator op = cubic().op;
  const SbpOperator m = map_operator(op, {2.0, 2.5});
  CHECK(m.grid.front() == 2.0);
  CHECK(m.grid.back() == 2.5);
  CHECK(m.weights(1) == doctest::Approx(0.5 * op.weights(1)));
  CHECK(m.Q == op.Q);
  CHECK((m.D - 2.0 * op.D).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((m.D * Vector::Ones(4)).cwiseAbs().maxCoeff() < 1e-12);
  // D x = 1 is not implied by the space, but constants must be annihilated
  CHECK(m.space.domain == Interval{0, 1});
}

TEST_CASE("space descriptor round trip") {
  const OperatorBuild b = cubic();
  const SpaceDescriptor d = SpaceDescriptor::of(b.space);
  const RbfSpace s = d.rebuild();
  CHECK(s.dimension() == 3);
  CHECK(s.kernel() == Kernel::phs_odd(2));
  CHECK(s.domain() == Interval{0, 1});
}

}

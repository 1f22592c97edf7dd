#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "rbfsbp/errors.hpp"
#include "rbfsbp/experiment.hpp"

using namespace rbfsbp;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rbfsbp_test_" + name);
  fs::remove_all(p);
  return p;
}

const json cubic_config = json::parse(R"({
  "kernel": {"family": "phs_odd", "k": 2}, "poly_degree": 0, "domain": [0, 1],
  "centers": {"points": [0, 0.5, 1]}, "grid": {"family": "equidistant", "n": 4},
  "golden": {"P": ["16/129", "81/215", "81/215", "16/129"], "P_rel_tol": 1e-10,
             "Q": [["-1/2", "59/100", "-3/20", "3/50"], ["-59/100", 0, "37/50", "-3/20"],
                   ["3/20", "-37/50", 0, "59/100"], ["-3/50", "3/20", "-59/100", "1/2"]],
             "D": [["-403/100", "473/100", "-121/100", "51/100"], ["-39/25", 0, "49/25", "-2/5"],
                   ["2/5", "-49/25", 0, "39/25"], ["-51/100", "121/100", "-473/100", "403/100"]]}
})");

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("exact number parsing") {
  CHECK(parse_exact_number("16/129") == doctest::Approx(16.0 / 129.0));
  CHECK(parse_exact_number("-0.5") == -0.5);
  CHECK(parse_exact_number(json(0.25)) == 0.25);
  CHECK_THROWS_AS(parse_exact_number("1/x"), ConfigError);
  CHECK_THROWS_AS(parse_exact_number("12abc"), ConfigError);
  CHECK_THROWS_AS(parse_exact_number(json::array()), ConfigError);
}

TEST_CASE("rounding") {
  CHECK(round_to(0.586957, 2) == doctest::Approx(0.59));
  CHECK(round_to(-4.03125, 2) == doctest::Approx(-4.03));
  CHECK(round_to(-0.0348, 2) == doctest::Approx(-0.03));
}

TEST_CASE("golden comparison") {
  const OperatorBuild b = build_spec_operator(parse_operator_spec(cubic_config));
  for (const GoldenCheck& c : compare_golden(b.op, cubic_config["golden"])) {
    CAPTURE(c.name);
    CHECK(c.passed);
  }
  json wrong = cubic_config["golden"];
  wrong["Q"][0][1] = "0.60";
  wrong["P"][0] = "0.125";
  const auto checks = compare_golden(b.op, wrong);
  CHECK_FALSE(checks[0].passed);
  CHECK_FALSE(checks[1].passed);
  CHECK(checks[2].passed);
}

TEST_CASE("point set and interval parsing") {
  const PointSet p = parse_point_set(json::parse(R"({"family": "equidistant", "n": 3})"), {0, 2});
  CHECK(p[1] == 1.0);
  const PointSet q = parse_point_set(json::parse(R"({"points": [0, 0.3, 1]})"), {0, 1});
  CHECK(q[1] == 0.3);
  CHECK_THROWS_AS(parse_interval(json::parse("[1, 0]")), ConfigError);
  CHECK_THROWS_AS(parse_interval(json::parse("[1]")), ConfigError);
  CHECK_THROWS_AS(parse_point_set(json::parse(R"({"points": [0, 2]})"), {0, 1}), ConfigError);
}

TEST_CASE("function catalogue") {
  const SpaceFn g = parse_function(json::parse(R"({"type": "gaussian", "width": 20})"));
  CHECK(g(0.1) == doctest::Approx(std::exp(-0.2)));
  CHECK(parse_function(json::parse(R"({"type": "constant", "value": 2})"))(5.0) == 2.0);
  CHECK(parse_function(json::parse(R"({"type": "linear", "slope": 2, "intercept": 1})"))(0.5) ==
        2.0);
  CHECK(smooth_bump(0.25) == doctest::Approx(1.0));
  CHECK(smooth_bump(0.5) == 0.0);
  CHECK(smooth_bump(-0.1) == 0.0);
  const TimeFn in = parse_time_function(json::parse(R"({"type": "bump_inflow"})"));
  CHECK(in(0.25) == doctest::Approx(1.0));
  CHECK(in(0.0) == doctest::Approx(smooth_bump(0.5)));
  CHECK_THROWS_AS(parse_function(json::parse(R"({"type": "sawtooth"})")), ConfigError);
}

TEST_CASE("error norms") {
  BlockLayout l;
  l.centers_per_block = 3;
  const BlockGrid g = build_block_grid(l);
  const Vector u = Vector::Ones(g.size());
  const ErrorNorms e = compute_errors(g, u, Vector::Zero(g.size()));
  CHECK(e.l2 == doctest::Approx(std::sqrt(g.weights().sum())));
  CHECK(e.max == 1.0);
  CHECK_THROWS_AS(compute_errors(g, u, Vector::Zero(2)), ContractError);
}

TEST_CASE("solve spec validation") {
  CHECK_THROWS_AS(parse_solve_spec(json::parse(R"({"problem": "burgers"})")), ConfigError);
  CHECK_THROWS_AS(parse_solve_spec(json::parse(R"({"initial": {"type": "bump"}})")), ConfigError);
  CHECK_THROWS_AS(parse_solve_spec(json::parse(R"({"kernel": {"family": "phs_odd", "k": 2}, "mode": "spectral"})")), ConfigError);
  CHECK_THROWS_AS(parse_solve_spec(json::parse(R"({"kernel": {"family": "phs_odd", "k": 2}, "topology": "line", "initial": {"type": "bump"}})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_solve_spec(json::parse(R"({"kernel": {"family": "phs_odd", "k": 2}, "problem": "advection-diffusion", "kappa": -1})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_solve_spec(json::parse(R"({"kernel": {"family": "phs_odd", "k": 2}, "problem": "advection", "kappa": 0.1, "topology": "ring", "initial": {"type": "bump"}})")),
                  ConfigError);
  const SolveSpec s = parse_solve_spec(json::parse(
      R"({"kernel": {"family": "phs_odd", "k": 2}, "K": 4, "blocks": 3, "topology": "ring", "initial": {"type": "bump"}, "t_end": 0.1})"));
  CHECK(s.layout.centers_per_block == 4);
  CHECK(s.layout.block_count == 3);
  CHECK(s.layout.topology == Topology::Ring);
}

TEST_CASE("short periodic solve") {
  const SolveSpec s = parse_solve_spec(json::parse(R"({
    "kernel": {"family": "phs_odd", "k": 2}, "K": 4, "blocks": 4, "domain": [0, 1], "topology": "ring",
    "initial": {"type": "sine", "frequency": 6.283185307179586}, "exact": "advected",
    "t_end": 0.2})"));
  const SolveOutcome r = run_solve(s);
  CHECK(r.steps == static_cast<int>(r.trace.size()) - 1);
  CHECK(r.unknowns == 4 * r.block_size);
  CHECK(r.max_step_increase <= 1e-10);
  REQUIRE(r.final_errors);
  CHECK(r.final_errors->l2 < 0.05);
}

TEST_CASE("verbs write their artifacts") {
  const fs::path dir = scratch_dir("verbs");
  const RunResult b = run_verb("build-operator", cubic_config, ".", dir / "op");
  CHECK(b.exit_code == 0);
  CHECK(fs::exists(dir / "op" / "operator.json"));
  CHECK(fs::exists(dir / "op" / "report.txt"));

  const json verify = {{"operator", (dir / "op" / "operator.json").string()}};
  const RunResult v = run_verb("verify", verify, ".", dir / "verify");
  CHECK(v.exit_code == 0);
  std::ifstream vin(dir / "verify" / "verification.json");
  CHECK(json::parse(vin)["passed"].get<bool>());

  const json diag = json::parse(R"({"kernel": {"family": "phs_odd", "k": 2}, "domain": [0, 1],
    "cases": [{"family": "equidistant", "n": 10, "poly_degree": 0}]})");
  CHECK(run_verb("diagnose", diag, ".", dir / "diag").exit_code == 0);
  std::ifstream din(dir / "diag" / "diagnostic.csv");
  std::string header;
  std::getline(din, header);
  CHECK(header == "family,N,poly_degree,residual,min_weight");

  const json solve = json::parse(R"({"kernel": {"family": "phs_odd", "k": 2}, "K": 3, "blocks": 2, "topology": "ring",
    "initial": {"type": "gaussian", "center": 0.5}, "exact": "advected", "t_end": 0.05})");
  CHECK(run_verb("solve", solve, ".", dir / "solve").exit_code == 0);
  std::ifstream ein(dir / "solve" / "energy.csv");
  std::getline(ein, header);
  CHECK(header == "step,t,energy,l2_error,max_error");
  CHECK(fs::exists(dir / "solve" / "solution.csv"));
  CHECK(fs::exists(dir / "solve" / "summary.json"));
  fs::remove_all(dir);
}

TEST_CASE("golden mismatch is reported through the exit code") {
  const fs::path dir = scratch_dir("mismatch");
  json config = cubic_config;
  config["golden"]["D"][0][0] = "-4.5";
  const RunResult r = run_verb("build-operator", config, ".", dir);
  CHECK(r.exit_code == 1);
  fs::remove_all(dir);
}

TEST_CASE("failed runs leave no artifacts") {
  const fs::path dir = scratch_dir("failed");
  const json bad = json::parse(R"({"kernel": {"family": "phs_odd", "k": 2}, "K": 3, "topology": "ring", "initial": {"type": "bump"},
    "exact": "boundary_layer", "t_end": 0.1})");
  CHECK_THROWS(run_verb("solve", bad, ".", dir));
  CHECK_FALSE(fs::exists(dir));
  CHECK_THROWS_AS(run_verb("plot", json::object(), ".", dir), ConfigError);
  CHECK_FALSE(fs::exists(dir));
}

}

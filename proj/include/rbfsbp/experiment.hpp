#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbfsbp/block_grid.hpp"
#include "rbfsbp/sbp.hpp"
#include "rbfsbp/solver.hpp"
#include "rbfsbp/solver2d.hpp"

namespace rbfsbp {

using nlohmann::json;

// ---- config pieces --------------------------------------------------------

/// {"family": "equidistant"|"halton"|"random", "n": 5, "seed": 0,
///  "include_endpoints": true} or {"points": [...]}.
PointSet parse_point_set(const json& j, Interval domain);

Interval parse_interval(const json& j);

/// Named closed-form functions used for initial, boundary and exact data:
///   {"type": "constant", "value": c}
///   {"type": "gaussian", "amplitude": 1, "width": 20, "center": 0}   A exp(-w (x-c)^2)
///   {"type": "bump"}        e^8 exp(-8 / (1 - (4x-1)^2)) on (0, 0.5), else 0
///   {"type": "linear", "slope": s, "intercept": b}
///   {"type": "sine", "amplitude": A, "frequency": w, "phase": p}     A sin(w x + p)
SpaceFn parse_function(const json& j);
/// Same catalogue in t, plus {"type": "bump_inflow"}: g(t) = bump(0.5 - t).
TimeFn parse_time_function(const json& j);

/// e^8 exp(-8 / (1 - (4x-1)^2)) for 0 < x < 0.5, else 0.
double smooth_bump(double x);

/// Operator construction section:
///   {"kernel": {...}, "poly_degree": 0, "domain": [0, 1],
///    "centers": <point set>, "grid": <point set> | {"family", "n_start", "n_max", "seed"},
///    "pivot_tolerance": 1e-13}
struct OperatorSpec {
  Kernel kernel = Kernel::phs_odd(2);
  int poly_degree = 0;
  Interval domain;
  json centers;
  json grid;
  SpaceOptions options;
};

OperatorSpec parse_operator_spec(const json& j);
RbfSpace build_spec_space(const OperatorSpec& spec);
/// Space, rule on the configured grid (fixed or searched) and the verified
/// operator.
OperatorBuild build_spec_operator(const OperatorSpec& spec);

// ---- golden comparison ----------------------------------------------------

/// "16/129", "-0.5" or a JSON number.
double parse_exact_number(const json& j);
double round_to(double x, int decimals);

struct GoldenCheck {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;  ///< largest |computed - golden| before rounding
  std::string detail;
};

/// golden: {"P": [...], "P_rel_tol": 1e-10 (optional), "Q": [[...]], "D": [[...]],
///          "decimals": 2}. Without P_rel_tol, P is compared after rounding.
std::vector<GoldenCheck> compare_golden(const SbpOperator& op, const json& golden);

// ---- solves ---------------------------------------------------------------

struct ErrorNorms {
  double l2 = 0.0;   ///< sqrt(sum_blocks (u - exact)^T P (u - exact))
  double max = 0.0;  ///< max |u - exact|
};

ErrorNorms compute_errors(const BlockGrid& grid, const Vector& u, const Vector& exact);

enum class Problem { Advection, AdvectionDiffusion, Advection2d };

/// "solve" / "convergence" configuration:
///   {"problem": "advection"|"advection-diffusion"|"advection-2d",
///    "mode": "rbfsbp"|"collocation",
///    "kernel": {...}, "poly_degree": 0, "domain": [xL, xR], "domain_y": [yL, yR],
///    "K": 5, "blocks": 20, "centers": "equidistant", "grid": "equidistant",
///    "seed": 0, "topology": "ring"|"line", "map_from_reference": false,
///    "pivot_tolerance": 1e-13, "n_max": 200,
///    "a": 1, "b": 1, "kappa": 0, "boundary": "flux"|"dirichlet",
///    "sigma0": -1, "sigma1": 1, "tau_interface": 0,
///    "initial": <function>, "left": <time function>, "right": <time function>,
///    "exact": "advected" | "inflow" | "boundary_layer" | "steady_initial",
///    "t_end": 1, "cfl": 0.1, "log_every": 1}
struct SolveSpec {
  Problem problem = Problem::Advection;
  bool collocation = false;
  BlockLayout layout;
  BlockLayout layout_y;  ///< 2D only
  double a = 1.0;
  double b = 1.0;
  double kappa = 0.0;
  BoundaryMode boundary = BoundaryMode::Flux;
  double sigma0 = -1.0;
  double sigma1 = 1.0;
  double tau_interface = 0.0;
  json initial;
  json left;
  json right;
  std::string exact;  ///< empty: no exact solution
  double t_end = 1.0;
  double cfl = 0.1;
  int log_every = 1;
};

SolveSpec parse_solve_spec(const json& j);

struct TraceRow {
  int step = 0;
  double t = 0.0;
  double energy = 0.0;
  std::optional<ErrorNorms> errors;
};

struct SolveOutcome {
  std::vector<TraceRow> trace;  ///< every step
  Vector nodes;                 ///< 1D: x; 2D: x-major pairs flattened (see nodes_y)
  Vector nodes_y;               ///< 2D only
  Vector solution;
  Vector initial;
  std::optional<Vector> exact;  ///< at t_end
  std::optional<ErrorNorms> final_errors;
  double dt = 0.0;
  int steps = 0;
  int unknowns = 0;
  int block_size = 0;  ///< nodes in the first block
  double initial_energy = 0.0;
  double max_energy = 0.0;
  /// max over steps of (E_{n+1} - E_n) / E_n
  double max_step_increase = 0.0;
  std::vector<std::string> warnings;
};

SolveOutcome run_solve(const SolveSpec& spec);

// ---- CLI verbs ------------------------------------------------------------

struct RunResult {
  int exit_code = 0;
  std::vector<std::filesystem::path> artifacts;
  std::string summary;
};

/// verb: build-operator | verify | diagnose | solve | convergence.
/// Relative paths inside the config resolve against config_dir. On failure
/// every artifact written so far is removed and the error propagates.
RunResult run_verb(const std::string& verb, const json& config,
                   const std::filesystem::path& config_dir, const std::filesystem::path& out_dir);

}  // namespace rbfsbp

#include "rbfsbp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "rbfsbp/errors.hpp"
#include "rbfsbp/sbp_io.hpp"
#include "rbfsbp/timestepping.hpp"

namespace rbfsbp {

namespace fs = std::filesystem;

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field \"") + key + "\": " + e.what());
  }
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("config: missing field \"") + key + "\"");
  }
  return j.at(key);
}

std::string sci(double v) { return fmt::format("{:.12e}", v); }

double wrap(double s, double period) {
  double r = std::fmod(s, period);
  if (r < 0.0) r += period;
  return r;
}

Topology parse_topology(const std::string& s) {
  if (s == "ring" || s == "periodic") return Topology::Ring;
  if (s == "line") return Topology::Line;
  throw ConfigError("unknown topology \"" + s + "\" (expected ring or line)");
}

}  // namespace

double smooth_bump(double x) {
  if (!(x > 0.0 && x < 0.5)) return 0.0;
  const double s = 4.0 * x - 1.0;
  return std::exp(8.0 - 8.0 / (1.0 - s * s));
}

Interval parse_interval(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("interval: expected [left, right]");
  const Interval I{j[0].get<double>(), j[1].get<double>()};
  if (!(I.left < I.right)) throw ConfigError("interval: left must be < right");
  return I;
}

PointSet parse_point_set(const json& j, Interval domain) {
  try {
    if (j.contains("points")) {
      return PointSet::from_points(j.at("points").get<std::vector<double>>(), domain);
    }
    const PointFamily family = point_family_from_string(get_or<std::string>(j, "family", "equidistant"));
    return generate(family, require(j, "n").get<int>(), domain, get_or<std::uint64_t>(j, "seed", 0),
                    get_or<bool>(j, "include_endpoints", true));
  } catch (const ContractError& e) {
    throw ConfigError(std::string("point set: ") + e.what());
  }
}

SpaceFn parse_function(const json& j) {
  const std::string type = require(j, "type").get<std::string>();
  if (type == "constant") {
    const double c = get_or(j, "value", 0.0);
    return [c](double) { return c; };
  }
  if (type == "gaussian") {
    const double A = get_or(j, "amplitude", 1.0);
    const double w = get_or(j, "width", 20.0);
    const double c = get_or(j, "center", 0.0);
    return [=](double x) { return A * std::exp(-w * (x - c) * (x - c)); };
  }
  if (type == "bump") return smooth_bump;
  if (type == "linear") {
    const double s = get_or(j, "slope", 1.0);
    const double b = get_or(j, "intercept", 0.0);
    return [=](double x) { return s * x + b; };
  }
  if (type == "sine") {
    const double A = get_or(j, "amplitude", 1.0);
    const double w = get_or(j, "frequency", 1.0);
    const double p = get_or(j, "phase", 0.0);
    return [=](double x) { return A * std::sin(w * x + p); };
  }
  throw ConfigError("unknown function type \"" + type + "\"");
}

TimeFn parse_time_function(const json& j) {
  if (require(j, "type").get<std::string>() == "bump_inflow") {
    return [](double t) { return smooth_bump(0.5 - t); };
  }
  return parse_function(j);
}

namespace {

std::function<double(double, double)> parse_function2d(const json& j) {
  const std::string type = require(j, "type").get<std::string>();
  if (type == "gaussian2d") {
    const double A = get_or(j, "amplitude", 1.0);
    const double w = get_or(j, "width", 20.0);
    const auto c = get_or<std::vector<double>>(j, "center", {0.5, 0.5});
    if (c.size() != 2) throw ConfigError("gaussian2d: center must have two entries");
    return [=](double x, double y) {
      return A * std::exp(-w * ((x - c[0]) * (x - c[0]) + (y - c[1]) * (y - c[1])));
    };
  }
  if (type == "constant") {
    const double v = get_or(j, "value", 0.0);
    return [v](double, double) { return v; };
  }
  throw ConfigError("unknown 2D function type \"" + type + "\"");
}

}  // namespace

OperatorSpec parse_operator_spec(const json& j) {
  OperatorSpec s;
  s.kernel = kernel_from_json(require(j, "kernel"));
  s.poly_degree = get_or(j, "poly_degree", 0);
  s.domain = j.contains("domain") ? parse_interval(j.at("domain")) : Interval{0.0, 1.0};
  s.centers = require(j, "centers");
  s.grid = require(j, "grid");
  s.options.pivot_tolerance = get_or(j, "pivot_tolerance", s.options.pivot_tolerance);
  s.options.condition_warning = get_or(j, "condition_warning", s.options.condition_warning);
  return s;
}

RbfSpace build_spec_space(const OperatorSpec& spec) {
  return build_space(spec.kernel, parse_point_set(spec.centers, spec.domain), spec.poly_degree,
                     spec.domain, spec.options);
}

OperatorBuild build_spec_operator(const OperatorSpec& spec) {
  RbfSpace space = build_spec_space(spec);
  QuadratureRule rule = [&] {
    if (spec.grid.contains("n") || spec.grid.contains("points")) {
      QuadratureRule r = least_squares_rule(space, parse_point_set(spec.grid, spec.domain));
      if (!r.accepted()) {
        throw QuadratureConstructionError(
            "configured grid gives no positive exact rule (N=" + std::to_string(r.grid.size()) +
                ", residual=" + sci(r.exactness_residual) + ", min weight=" + sci(r.min_weight) + ")",
            r);
      }
      return r;
    }
    GridSpec g;
    g.family = point_family_from_string(get_or<std::string>(spec.grid, "family", "equidistant"));
    g.seed = get_or<std::uint64_t>(spec.grid, "seed", 0);
    return construct_positive_rule(space, g, get_or(spec.grid, "n_start", space.dimension()),
                                   get_or(spec.grid, "n_max", 200));
  }();
  SbpOperator op = build_sbp(space, rule);
  return {std::move(space), std::move(rule), std::move(op)};
}

// ---- golden ---------------------------------------------------------------

double parse_exact_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) throw ConfigError("golden: expected a number or a string");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  auto to_double = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.empty()) throw ConfigError("golden: bad number \"" + s + "\"");
    return v;
  };
  if (slash == std::string::npos) return to_double(s);
  return to_double(s.substr(0, slash)) / to_double(s.substr(slash + 1));
}

double round_to(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(x * scale) / scale;
}

namespace {

GoldenCheck compare_matrix(const std::string& name, const Matrix& computed, const json& golden,
                           int decimals) {
  GoldenCheck c;
  c.name = name;
  if (!golden.is_array() || static_cast<Eigen::Index>(golden.size()) != computed.rows()) {
    c.detail = "row count mismatch";
    return c;
  }
  const double eps = 0.5 * std::pow(10.0, -decimals - 6);
  c.passed = true;
  for (Eigen::Index i = 0; i < computed.rows(); ++i) {
    const json& row = golden[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != computed.cols()) {
      c.passed = false;
      c.detail = "column count mismatch in row " + std::to_string(i);
      return c;
    }
    for (Eigen::Index k = 0; k < computed.cols(); ++k) {
      const double g = parse_exact_number(row[static_cast<std::size_t>(k)]);
      c.max_deviation = std::max(c.max_deviation, std::abs(computed(i, k) - g));
      if (std::abs(round_to(computed(i, k), decimals) - round_to(g, decimals)) > eps) {
        if (c.passed) {
          c.detail = fmt::format("first mismatch at ({},{}): computed {:.6f}, golden {:.6f}", i, k,
                                 computed(i, k), g);
        }
        c.passed = false;
      }
    }
  }
  return c;
}

}  // namespace

std::vector<GoldenCheck> compare_golden(const SbpOperator& op, const json& golden) {
  const int decimals = get_or(golden, "decimals", 2);
  std::vector<GoldenCheck> out;
  if (golden.contains("P")) {
    const json& P = golden.at("P");
    GoldenCheck c;
    c.name = "P";
    if (!P.is_array() || static_cast<Eigen::Index>(P.size()) != op.weights.size()) {
      c.detail = "length mismatch";
    } else if (golden.contains("P_rel_tol")) {
      const double tol = golden.at("P_rel_tol").get<double>();
      c.passed = true;
      double worst = 0.0;
      for (Eigen::Index i = 0; i < op.weights.size(); ++i) {
        const double g = parse_exact_number(P[static_cast<std::size_t>(i)]);
        const double rel = std::abs(op.weights(i) - g) / std::abs(g);
        worst = std::max(worst, rel);
        c.max_deviation = std::max(c.max_deviation, std::abs(op.weights(i) - g));
        c.passed = c.passed && rel <= tol;
      }
      c.detail = fmt::format("max relative deviation {:.3e} (tolerance {:.1e})", worst, tol);
    } else {
      Matrix diag(1, op.weights.size());
      diag.row(0) = op.weights.transpose();
      json row = json::array({P});
      c = compare_matrix("P", diag, row, decimals);
    }
    out.push_back(c);
  }
  if (golden.contains("Q")) out.push_back(compare_matrix("Q", op.Q, golden.at("Q"), decimals));
  if (golden.contains("D")) out.push_back(compare_matrix("D", op.D, golden.at("D"), decimals));
  return out;
}

// ---- solves ---------------------------------------------------------------

ErrorNorms compute_errors(const BlockGrid& grid, const Vector& u, const Vector& exact) {
  if (u.size() != grid.size() || exact.size() != grid.size()) {
    throw ContractError("compute_errors: size mismatch");
  }
  const Vector e = u - exact;
  return {std::sqrt(discrete_energy(grid, e)), e.size() ? e.cwiseAbs().maxCoeff() : 0.0};
}

SolveSpec parse_solve_spec(const json& j) {
  SolveSpec s;
  const std::string problem = get_or<std::string>(j, "problem", "advection");
  if (problem == "advection") {
    s.problem = Problem::Advection;
  } else if (problem == "advection-diffusion") {
    s.problem = Problem::AdvectionDiffusion;
  } else if (problem == "advection-2d") {
    s.problem = Problem::Advection2d;
  } else {
    throw ConfigError("unknown problem \"" + problem + "\"");
  }
  const std::string mode = get_or<std::string>(j, "mode", "rbfsbp");
  if (mode != "rbfsbp" && mode != "collocation") throw ConfigError("unknown mode \"" + mode + "\"");
  s.collocation = mode == "collocation";
  if (s.collocation && s.problem == Problem::Advection2d) {
    throw ConfigError("collocation mode is only available for 1D problems");
  }

  BlockLayout& L = s.layout;
  L.kernel = kernel_from_json(require(j, "kernel"));
  L.poly_degree = get_or(j, "poly_degree", 0);
  L.domain = j.contains("domain") ? parse_interval(j.at("domain")) : Interval{0.0, 1.0};
  L.centers_per_block = get_or(j, "K", 5);
  L.block_count = get_or(j, "blocks", 1);
  L.center_family = point_family_from_string(get_or<std::string>(j, "centers", "equidistant"));
  L.grid.family = point_family_from_string(get_or<std::string>(j, "grid", "equidistant"));
  L.center_seed = get_or<std::uint64_t>(j, "seed", 0);
  L.grid.seed = L.center_seed;
  L.n_max = get_or(j, "n_max", 200);
  L.topology = parse_topology(get_or<std::string>(j, "topology", "line"));
  L.map_from_reference = get_or(j, "map_from_reference", false);
  if (j.contains("reference")) L.reference = parse_interval(j.at("reference"));
  L.options.pivot_tolerance = get_or(j, "pivot_tolerance", L.options.pivot_tolerance);
  s.layout_y = L;
  if (j.contains("domain_y")) s.layout_y.domain = parse_interval(j.at("domain_y"));
  if (j.contains("topology_y")) s.layout_y.topology = parse_topology(j.at("topology_y").get<std::string>());

  s.a = get_or(j, "a", 1.0);
  s.b = get_or(j, "b", 1.0);
  s.kappa = get_or(j, "kappa", 0.0);
  if (s.kappa < 0.0) throw ConfigError("kappa must be >= 0");
  const std::string boundary = get_or<std::string>(j, "boundary", "flux");
  if (boundary == "flux") {
    s.boundary = BoundaryMode::Flux;
  } else if (boundary == "dirichlet") {
    s.boundary = BoundaryMode::Dirichlet;
  } else {
    throw ConfigError("unknown boundary mode \"" + boundary + "\"");
  }
  s.sigma0 = get_or(j, "sigma0", -1.0);
  s.sigma1 = get_or(j, "sigma1", 1.0);
  s.tau_interface = get_or(j, "tau_interface", 0.0);
  s.initial = require(j, "initial");
  s.left = get_or<json>(j, "left", json());
  s.right = get_or<json>(j, "right", json());
  s.exact = get_or<std::string>(j, "exact", "");
  s.t_end = get_or(j, "t_end", 1.0);
  s.cfl = get_or(j, "cfl", 0.1);
  s.log_every = std::max(1, get_or(j, "log_every", 1));

  if (s.problem == Problem::Advection && s.kappa != 0.0) {
    throw ConfigError("problem \"advection\" does not take kappa; use advection-diffusion");
  }
  if (s.problem != Problem::Advection2d && s.layout.topology == Topology::Line) {
    const bool need_left = s.problem == Problem::AdvectionDiffusion || s.a > 0.0;
    const bool need_right = s.problem == Problem::AdvectionDiffusion || s.a < 0.0;
    if (need_left && s.left.is_null()) throw ConfigError("line topology needs \"left\" boundary data");
    if (need_right && s.right.is_null()) {
      throw ConfigError("line topology needs \"right\" boundary data");
    }
  }
  return s;
}

namespace {

BlockGrid make_grid(const BlockLayout& layout, bool collocation) {
  return collocation ? collocation_grid(layout) : build_block_grid(layout);
}

void collect_warnings(const SolveSpec& spec, SolveOutcome& out) {
  if (spec.collocation) {
    out.warnings.push_back(
        "classical collocation mode: D = C_x on the centers with trapezoidal energy weights; "
        "this operator is not SBP and the scheme is not energy stable");
  }
}

SolveOutcome run_solve_1d(const SolveSpec& spec) {
  SolveOutcome out;
  collect_warnings(spec, out);
  const BlockGrid grid = make_grid(spec.layout, spec.collocation);

  SolveConfig cfg;
  cfg.a = spec.a;
  if (spec.kappa > 0.0) {
    const double k = spec.kappa;
    cfg.kappa = [k](double) { return k; };
  }
  cfg.sigma0 = spec.sigma0;
  cfg.sigma1 = spec.sigma1;
  cfg.boundary = spec.boundary;
  cfg.tau_interface = spec.tau_interface;
  if (!spec.left.is_null()) cfg.g_left = parse_time_function(spec.left);
  if (!spec.right.is_null()) cfg.g_right = parse_time_function(spec.right);

  const SpaceFn u0 = parse_function(spec.initial);
  const Interval dom = grid.domain();
  std::function<Vector(double)> exact;
  if (spec.exact == "advected") {
    exact = [&](double t) {
      return sample(grid, [&](double x) {
        return u0(dom.left + wrap(x - spec.a * t - dom.left, dom.length()));
      });
    };
  } else if (spec.exact == "inflow") {
    if (spec.a == 0.0) throw ConfigError("exact \"inflow\" needs a != 0");
    exact = [&](double t) {
      return sample(grid, [&](double x) {
        if (spec.a > 0.0) {
          const double s = x - dom.left - spec.a * t;
          return s >= 0.0 ? u0(x - spec.a * t) : cfg.g_left(-s / spec.a);
        }
        const double s = dom.right - x + spec.a * t;
        return s >= 0.0 ? u0(x - spec.a * t) : cfg.g_right(s / spec.a);
      });
    };
  } else if (spec.exact == "boundary_layer") {
    if (!(spec.kappa > 0.0)) throw ConfigError("exact \"boundary_layer\" needs kappa > 0");
    exact = [&](double) {
      const double r = spec.a / spec.kappa;
      return sample(grid, [&](double x) {
        return std::expm1(r * (x - dom.left)) / std::expm1(r * dom.length());
      });
    };
  } else if (spec.exact == "steady_initial") {
    exact = [&](double) { return sample(grid, u0); };
  } else if (!spec.exact.empty()) {
    throw ConfigError("unknown exact solution \"" + spec.exact + "\"");
  }

  RhsFn rhs;
  if (spec.problem == Problem::Advection) {
    rhs = [&](const Vector& u, double t) { return advection_rhs(grid, cfg, u, t); };
  } else {
    rhs = [&](const Vector& u, double t) { return advection_diffusion_rhs(grid, cfg, u, t); };
  }

  const TimeLoop loop = cfl_time_loop(spec.t_end, grid.h_min(), spec.a, max_kappa(grid, cfg), spec.cfl);
  out.dt = loop.dt;
  out.steps = loop.steps();
  out.unknowns = grid.size();
  out.block_size = grid.block_size(0);
  out.nodes = grid.nodes();
  out.initial = sample(grid, u0);
  out.initial_energy = discrete_energy(grid, out.initial);
  out.max_energy = out.initial_energy;
  double previous = out.initial_energy;
  out.solution = integrate(rhs, out.initial, loop, [&](int step, double t, const Vector& u) {
    TraceRow row{step, t, discrete_energy(grid, u), std::nullopt};
    if (exact && (step % spec.log_every == 0 || step == out.steps)) {
      row.errors = compute_errors(grid, u, exact(t));
    }
    if (step > 0 && previous > 0.0) {
      out.max_step_increase = std::max(out.max_step_increase, (row.energy - previous) / previous);
    }
    previous = row.energy;
    out.max_energy = std::max(out.max_energy, row.energy);
    out.trace.push_back(row);
  });
  if (exact) {
    out.exact = exact(spec.t_end);
    out.final_errors = compute_errors(grid, out.solution, *out.exact);
  }
  return out;
}

SolveOutcome run_solve_2d(const SolveSpec& spec) {
  SolveOutcome out;
  const TensorGrid grid{build_block_grid(spec.layout), build_block_grid(spec.layout_y)};
  SolveConfig2d cfg;
  cfg.a = spec.a;
  cfg.b = spec.b;
  if (!spec.left.is_null()) {
    const TimeFn g = parse_time_function(spec.left);
    cfg.inflow_x = [g](double, double t) { return g(t); };
    cfg.inflow_y = [g](double, double t) { return g(t); };
  }
  const auto u0 = parse_function2d(spec.initial);
  const Interval dx = grid.x.domain();
  const Interval dy = grid.y.domain();
  std::function<Vector(double)> exact;
  if (spec.exact == "advected") {
    exact = [&](double t) {
      return sample2d(grid, [&](double x, double y) {
        return u0(dx.left + wrap(x - spec.a * t - dx.left, dx.length()),
                  dy.left + wrap(y - spec.b * t - dy.left, dy.length()));
      });
    };
  } else if (spec.exact == "steady_initial") {
    exact = [&](double) { return sample2d(grid, u0); };
  } else if (!spec.exact.empty()) {
    throw ConfigError("unknown 2D exact solution \"" + spec.exact + "\"");
  }
  const Vector wx = grid.x.weights();
  const Vector wy = grid.y.weights();
  auto errors = [&](const Vector& u, const Vector& e) {
    const Vector d = u - e;
    return ErrorNorms{std::sqrt(energy2d(grid, d)), d.cwiseAbs().maxCoeff()};
  };

  const RhsFn rhs = [&](const Vector& u, double t) { return advection2d_rhs(grid, cfg, u, t); };
  const double h = std::min(grid.x.h_min(), grid.y.h_min());
  const TimeLoop loop = cfl_time_loop(spec.t_end, h, std::abs(spec.a) + std::abs(spec.b), 0.0, spec.cfl);
  out.dt = loop.dt;
  out.steps = loop.steps();
  out.unknowns = grid.size();
  out.block_size = grid.x.block_size(0);
  out.nodes = grid.x.nodes();
  out.nodes_y = grid.y.nodes();
  out.initial = sample2d(grid, u0);
  out.initial_energy = energy2d(grid, out.initial);
  out.max_energy = out.initial_energy;
  double previous = out.initial_energy;
  out.solution = integrate(rhs, out.initial, loop, [&](int step, double t, const Vector& u) {
    TraceRow row{step, t, energy2d(grid, u), std::nullopt};
    if (exact && (step % spec.log_every == 0 || step == out.steps)) row.errors = errors(u, exact(t));
    if (step > 0 && previous > 0.0) {
      out.max_step_increase = std::max(out.max_step_increase, (row.energy - previous) / previous);
    }
    previous = row.energy;
    out.max_energy = std::max(out.max_energy, row.energy);
    out.trace.push_back(row);
  });
  if (exact) {
    out.exact = exact(spec.t_end);
    out.final_errors = errors(out.solution, *out.exact);
  }
  return out;
}

}  // namespace

SolveOutcome run_solve(const SolveSpec& spec) {
  return spec.problem == Problem::Advection2d ? run_solve_2d(spec) : run_solve_1d(spec);
}

// ---- verbs ----------------------------------------------------------------

namespace {

/// Files written by one verb; removed again unless the verb completes.
class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {
    if (!fs::exists(dir_)) {
      fs::create_directories(dir_);
      created_dir_ = true;
    }
  }
  Artifacts(const Artifacts&) = delete;
  Artifacts& operator=(const Artifacts&) = delete;
  ~Artifacts() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& p : files_) fs::remove(p, ec);
    if (created_dir_ && fs::is_empty(dir_, ec)) fs::remove(dir_, ec);
  }

  std::ofstream open(const std::string& name) {
    const fs::path p = dir_ / name;
    files_.push_back(p);
    std::ofstream out(p);
    if (!out) throw Error("cannot write " + p.string());
    return out;
  }
  void add(const std::string& name) { files_.push_back(dir_ / name); }
  const fs::path& dir() const { return dir_; }
  std::vector<fs::path> commit() {
    committed_ = true;
    return files_;
  }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
  bool created_dir_ = false;
  bool committed_ = false;
};

void write_matrix(std::ostream& os, const std::string& name, const Matrix& m) {
  fmt::print(os, "{} =\n", name);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) fmt::print(os, "{:>12.6f}", m(i, k));
    fmt::print(os, "\n");
  }
}

json report_json(const SbpReport& r) {
  return {{"exactness_residual", r.exactness_residual}, {"exactness_bound", r.exactness_bound},
          {"skew_residual", r.skew_residual},           {"skew_bound", r.skew_bound},
          {"min_weight", r.min_weight},                 {"constants_in_space", r.constants_in_space},
          {"constant_residual", r.constant_residual},   {"exactness_ok", r.exactness_ok},
          {"skew_ok", r.skew_ok},                       {"positivity_ok", r.positivity_ok},
          {"constants_ok", r.constants_ok},             {"passed", r.passed()}};
}

RunResult verb_build_operator(const json& config, Artifacts& art) {
  const OperatorSpec spec = parse_operator_spec(config);
  const OperatorBuild built = build_spec_operator(spec);
  const SbpReport report = verify_sbp(built.op, built.space);

  save_operator(built.op, art.dir() / "operator.json");
  art.add("operator.json");

  RunResult result;
  auto out = art.open("report.txt");
  fmt::print(out, "kernel {}, K={}, polynomial degree {}, domain [{}, {}]\n", spec.kernel.name(),
             built.space.dimension(), spec.poly_degree, spec.domain.left, spec.domain.right);
  for (const auto& w : built.space.warnings()) fmt::print(out, "warning: {}\n", w);
  fmt::print(out, "grid N={} ({}), quadrature residual {:.3e}, min weight {:.6f}\n",
             built.rule.grid.size(), to_string(built.rule.grid.family()),
             built.rule.exactness_residual, built.rule.min_weight);
  fmt::print(out, "grid =");
  for (double x : built.op.grid.points()) fmt::print(out, " {:.6f}", x);
  fmt::print(out, "\nP =");
  for (Eigen::Index i = 0; i < built.op.weights.size(); ++i) fmt::print(out, " {:.10f}", built.op.weights(i));
  fmt::print(out, "\n");
  write_matrix(out, "Q", built.op.Q);
  write_matrix(out, "D", built.op.D);
  fmt::print(out, "exactness residual {:.3e} (bound {:.3e}) {}\n", report.exactness_residual,
             report.exactness_bound, report.exactness_ok ? "ok" : "FAIL");
  fmt::print(out, "skew residual {:.3e} (bound {:.1e}) {}\n", report.skew_residual,
             report.skew_bound, report.skew_ok ? "ok" : "FAIL");
  bool golden_ok = true;
  if (config.contains("golden")) {
    for (const auto& c : compare_golden(built.op, config.at("golden"))) {
      fmt::print(out, "golden {}: {} (max deviation {:.3e}){}{}\n", c.name, c.passed ? "match" : "MISMATCH",
                 c.max_deviation, c.detail.empty() ? "" : "; ", c.detail);
      golden_ok = golden_ok && c.passed;
    }
  }
  result.exit_code = golden_ok ? 0 : 1;
  result.summary = fmt::format("operator with N={} built{}", built.op.size(),
                               config.contains("golden") ? (golden_ok ? ", goldens match" : ", GOLDEN MISMATCH") : "");
  return result;
}

RunResult verb_verify(const json& config, const fs::path& config_dir, Artifacts& art) {
  SbpOperator op;
  std::optional<RbfSpace> space;
  if (config.contains("operator")) {
    fs::path p = config.at("operator").get<std::string>();
    if (p.is_relative()) p = config_dir / p;
    op = load_operator(p);
    SpaceOptions options;
    options.pivot_tolerance = get_or(config, "pivot_tolerance", options.pivot_tolerance);
    space = op.space.rebuild(options);
    if (!(op.space.domain == op.grid.interval())) op = map_operator(op, op.space.domain);
  } else {
    OperatorBuild built = build_spec_operator(parse_operator_spec(config));
    op = std::move(built.op);
    space = std::move(built.space);
  }
  const SbpReport report = verify_sbp(op, *space);
  const int trials = get_or(config, "ibp_trials", 100);
  const IbpCheck ibp = discrete_ibp_check(op, *space, trials, get_or<std::uint64_t>(config, "seed", 1));
  const double ibp_bound = get_or(config, "ibp_tolerance", 1e-8) * ibp.scale;
  const bool ibp_ok = ibp.max_defect <= ibp_bound;

  json j = report_json(report);
  j["ibp_trials"] = trials;
  j["ibp_max_defect"] = ibp.max_defect;
  j["ibp_bound"] = ibp_bound;
  j["ibp_ok"] = ibp_ok;
  j["kind"] = op.kind == OperatorKind::Sbp ? "rbfsbp" : "collocation (not SBP)";
  auto out = art.open("verification.json");
  out << j.dump(2) << '\n';

  RunResult result;
  result.exit_code = report.passed() && ibp_ok ? 0 : 1;
  result.summary = fmt::format("exactness {:.2e}, skew {:.2e}, min weight {:.3e}, ibp defect {:.2e}: {}",
                               report.exactness_residual, report.skew_residual, report.min_weight,
                               ibp.max_defect, result.exit_code == 0 ? "PASS" : "FAIL");
  return result;
}

RunResult verb_diagnose(const json& config, Artifacts& art) {
  const Kernel kernel = kernel_from_json(require(config, "kernel"));
  const Interval domain = config.contains("domain") ? parse_interval(config.at("domain")) : Interval{0.0, 1.0};
  SpaceOptions options;
  options.pivot_tolerance = get_or(config, "pivot_tolerance", options.pivot_tolerance);
  const json& cases = require(config, "cases");
  if (!cases.is_array()) throw ConfigError("diagnose: \"cases\" must be an array");

  std::vector<std::string> lines;
  for (const auto& c : cases) {
    const PointSet centers = parse_point_set(c, domain);
    const int degree = get_or(c, "poly_degree", 0);
    const RbfSpace space = build_space(kernel, centers, degree, domain, options);
    const CollocationDiagnostic d = collocation_diagnostic(space);
    lines.push_back(fmt::format("{},{},{},{},{}", to_string(centers.family()), centers.size(), degree,
                                sci(d.residual), sci(d.min_weight)));
  }
  auto out = art.open("diagnostic.csv");
  out << "family,N,poly_degree,residual,min_weight\n";
  for (const auto& l : lines) out << l << '\n';
  return {0, {}, fmt::format("{} collocation diagnostics written", lines.size())};
}

void write_solve_artifacts(const SolveSpec& spec, const SolveOutcome& r, Artifacts& art) {
  {
    auto out = art.open("energy.csv");
    const bool errors = r.final_errors.has_value();
    out << (errors ? "step,t,energy,l2_error,max_error\n" : "step,t,energy\n");
    for (const auto& row : r.trace) {
      if (row.step % spec.log_every != 0 && row.step != r.steps) continue;
      out << row.step << ',' << sci(row.t) << ',' << sci(row.energy);
      if (errors) {
        out << ',' << (row.errors ? sci(row.errors->l2) : "") << ','
            << (row.errors ? sci(row.errors->max) : "");
      }
      out << '\n';
    }
  }
  {
    auto out = art.open("solution.csv");
    const bool two_d = spec.problem == Problem::Advection2d;
    out << (two_d ? "x,y,u" : "x,u") << (r.exact ? ",exact\n" : "\n");
    const Eigen::Index ny = two_d ? r.nodes_y.size() : 1;
    for (Eigen::Index n = 0; n < r.solution.size(); ++n) {
      if (two_d) {
        out << sci(r.nodes(n / ny)) << ',' << sci(r.nodes_y(n % ny));
      } else {
        out << sci(r.nodes(n));
      }
      out << ',' << sci(r.solution(n));
      if (r.exact) out << ',' << sci((*r.exact)(n));
      out << '\n';
    }
  }
  json s = {{"mode", spec.collocation ? "collocation (unstable, not SBP)" : "rbfsbp"},
            {"dt", r.dt},
            {"steps", r.steps},
            {"unknowns", r.unknowns},
            {"nodes_per_block", r.block_size},
            {"initial_energy", r.initial_energy},
            {"final_energy", r.trace.back().energy},
            {"max_energy", r.max_energy},
            {"max_step_relative_increase", r.max_step_increase},
            {"warnings", r.warnings}};
  if (r.final_errors) {
    s["l2_error"] = r.final_errors->l2;
    s["max_error"] = r.final_errors->max;
  }
  auto out = art.open("summary.json");
  out << s.dump(2) << '\n';
}

RunResult verb_solve(const json& config, Artifacts& art) {
  const SolveSpec spec = parse_solve_spec(config);
  const SolveOutcome r = run_solve(spec);
  write_solve_artifacts(spec, r, art);
  std::string summary = fmt::format("{} steps, energy {:.6e} -> {:.6e} (max {:.6e})", r.steps,
                                    r.initial_energy, r.trace.back().energy, r.max_energy);
  if (r.final_errors) summary += fmt::format(", L2 error {:.3e}", r.final_errors->l2);
  if (spec.collocation) summary += " [classical collocation: unstable, not SBP]";
  return {0, {}, summary};
}

RunResult verb_convergence(const json& config, Artifacts& art) {
  const SolveSpec base = parse_solve_spec(config);
  if (base.exact.empty()) throw ConfigError("convergence: an \"exact\" solution is required");
  const auto Ks = require(config, "K_values").get<std::vector<int>>();
  std::vector<std::string> lines;
  std::string summary = "L2 errors:";
  for (int K : Ks) {
    SolveSpec spec = base;
    spec.layout.centers_per_block = K;
    spec.layout_y.centers_per_block = K;
    spec.log_every = std::numeric_limits<int>::max();
    const SolveOutcome r = run_solve(spec);
    lines.push_back(fmt::format("{},{},{},{},{},{}", K, r.block_size, r.unknowns, sci(r.dt),
                                sci(r.final_errors->l2), sci(r.final_errors->max)));
    summary += fmt::format(" K={}: {:.3e}", K, r.final_errors->l2);
  }
  auto out = art.open("convergence.csv");
  out << "K,nodes_per_block,unknowns,dt,l2_error,max_error\n";
  for (const auto& l : lines) out << l << '\n';
  return {0, {}, summary};
}

}  // namespace

RunResult run_verb(const std::string& verb, const json& config, const fs::path& config_dir,
                   const fs::path& out_dir) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  Artifacts art(out_dir);
  RunResult r;
  if (verb == "build-operator") {
    r = verb_build_operator(config, art);
  } else if (verb == "verify") {
    r = verb_verify(config, config_dir, art);
  } else if (verb == "diagnose") {
    r = verb_diagnose(config, art);
  } else if (verb == "solve") {
    r = verb_solve(config, art);
  } else if (verb == "convergence") {
    r = verb_convergence(config, art);
  } else {
    throw ConfigError("unknown verb \"" + verb + "\"");
  }
  r.artifacts = art.commit();
  return r;
}

}  // namespace rbfsbp

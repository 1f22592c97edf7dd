#pragma once

#include <functional>

#include "rbfsbp/block_grid.hpp"
#include "rbfsbp/types.hpp"

namespace rbfsbp {

using SpaceFn = std::function<double(double x)>;
using TimeFn = std::function<double(double t)>;
using SpaceTimeFn = std::function<double(double x, double t)>;

/// How physical boundaries of advection-diffusion problems are imposed.
enum class BoundaryMode {
  /// Robin/flux data: a u - kappa u_x = gL at x_L and kappa u_x = gR at x_R,
  /// with penalties sigma0, sigma1.
  Flux,
  /// Dirichlet values u = gL, u = gR, imposed with a symmetric interior-penalty
  /// type SAT (D^T K terms plus tau0 = a + kappa0/w0, tauN = kappaN/wN).
  Dirichlet,
};

struct SolveConfig {
  double a = 1.0;
  SpaceFn kappa;        ///< empty means kappa = 0
  double sigma0 = -1.0;
  double sigma1 = 1.0;
  SpaceTimeFn forcing;  ///< empty means F = 0
  TimeFn g_left;        ///< inflow data for a > 0 / left boundary data
  TimeFn g_right;       ///< inflow data for a < 0 / right boundary data
  BoundaryMode boundary = BoundaryMode::Flux;
  double tau_interface = 0.0;  ///< extra jump penalty at diffusive interfaces, >= 0
};

/// u_t = -a D u + P^{-1} S per block. Upwind SATs: the inflow node of every
/// block is penalized by -|a| (u_in - u_ext), where u_ext is the neighbour's
/// outflow value (ring or interior interface) or the boundary data.
Vector advection_rhs(const BlockGrid& grid, const SolveConfig& cfg, const Vector& u, double t);

/// u_t = -a D u + D (K D u) + F + P^{-1} S with a >= 0. Physical boundaries
/// follow cfg.boundary; block interfaces use an energy-stable coupling whose
/// contribution to d/dt ||u||^2 is -a [u]^2 - 2 tau_interface [u]^2.
Vector advection_diffusion_rhs(const BlockGrid& grid, const SolveConfig& cfg, const Vector& u,
                               double t);

/// Sum over blocks of u^T P u.
double discrete_energy(const BlockGrid& grid, const Vector& u);

/// Sum over blocks of 2 (D u)^T P K (D u).
double viscous_term(const BlockGrid& grid, const SolveConfig& cfg, const Vector& u);

/// Right-hand side of the flux-mode energy identity for a single block:
/// a^{-1} (gL^2 - (a u0 - gL)^2 - (a uN - gR)^2 + gR^2), written without the
/// division so that a = 0 is allowed.
double flux_energy_rate(double a, double u0, double uN, double gL, double gR);

/// Largest kappa over all nodes (0 without diffusion). Throws ConfigError on
/// negative samples.
double max_kappa(const BlockGrid& grid, const SolveConfig& cfg);

/// Samples f at every node.
Vector sample(const BlockGrid& grid, const SpaceFn& f);

}  // namespace rbfsbp

#include "rbfsbp/solver.hpp"

#include <cmath>
#include <string>

#include "rbfsbp/errors.hpp"

namespace rbfsbp {

namespace {

double boundary_value(const TimeFn& g, double t, const char* which) {
  if (!g) throw ConfigError(std::string("missing ") + which + " boundary data");
  return g(t);
}

void add_forcing(const BlockGrid& grid, const SolveConfig& cfg, double t, Vector& rhs) {
  if (!cfg.forcing) return;
  for (int i = 0; i < grid.block_count(); ++i) {
    auto r = grid.segment(rhs, i);
    const auto& x = grid.block(i).grid;
    for (int n = 0; n < r.size(); ++n) r(n) += cfg.forcing(x[static_cast<std::size_t>(n)], t);
  }
}

Vector block_kappa(const SbpOperator& op, const SolveConfig& cfg) {
  Vector k(op.size());
  for (int n = 0; n < op.size(); ++n) {
    k(n) = cfg.kappa ? cfg.kappa(op.grid[static_cast<std::size_t>(n)]) : 0.0;
    if (!(k(n) >= 0.0)) throw ConfigError("kappa must be nonnegative and finite");
  }
  return k;
}

}  // namespace

Vector sample(const BlockGrid& grid, const SpaceFn& f) {
  const Vector x = grid.nodes();
  Vector u(x.size());
  for (Eigen::Index n = 0; n < x.size(); ++n) u(n) = f(x(n));
  return u;
}

Vector advection_rhs(const BlockGrid& grid, const SolveConfig& cfg, const Vector& u, double t) {
  if (u.size() != grid.size()) throw ContractError("advection_rhs: state size mismatch");
  const int I = grid.block_count();
  const bool ring = grid.topology() == Topology::Ring;
  const double a = cfg.a;
  Vector rhs(u.size());
  for (int i = 0; i < I; ++i) {
    grid.segment(rhs, i).noalias() = -a * (grid.block(i).D * grid.segment(u, i));
  }
  if (a > 0.0) {
    for (int i = 0; i < I; ++i) {
      double ext;
      if (i > 0 || ring) {
        const int j = (i + I - 1) % I;
        ext = grid.segment(u, j)(grid.block_size(j) - 1);
      } else {
        ext = boundary_value(cfg.g_left, t, "inflow (left)");
      }
      const int n0 = grid.offset(i);
      rhs(n0) -= a * (u(n0) - ext) / grid.block(i).weights(0);
    }
  } else if (a < 0.0) {
    for (int i = 0; i < I; ++i) {
      double ext;
      if (i + 1 < I || ring) {
        ext = u(grid.offset((i + 1) % I));
      } else {
        ext = boundary_value(cfg.g_right, t, "inflow (right)");
      }
      const int nN = grid.offset(i + 1) - 1;
      rhs(nN) -= -a * (u(nN) - ext) / grid.block(i).weights(grid.block_size(i) - 1);
    }
  }
  add_forcing(grid, cfg, t, rhs);
  return rhs;
}

Vector advection_diffusion_rhs(const BlockGrid& grid, const SolveConfig& cfg, const Vector& u,
                               double t) {
  if (u.size() != grid.size()) throw ContractError("advection_diffusion_rhs: state size mismatch");
  if (cfg.a < 0.0) {
    throw ConfigError("advection-diffusion: a must be >= 0 (left boundary is the inflow)");
  }
  if (cfg.tau_interface < 0.0) throw ConfigError("advection-diffusion: tau_interface < 0");
  const int I = grid.block_count();
  const bool ring = grid.topology() == Topology::Ring;
  const double a = cfg.a;

  std::vector<Vector> kappa(static_cast<std::size_t>(I));
  std::vector<Vector> flux(static_cast<std::size_t>(I));  // K D u
  Vector rhs(u.size());
  for (int i = 0; i < I; ++i) {
    const auto& op = grid.block(i);
    const Vector Du = op.D * grid.segment(u, i);
    kappa[static_cast<std::size_t>(i)] = block_kappa(op, cfg);
    flux[static_cast<std::size_t>(i)] = kappa[static_cast<std::size_t>(i)].cwiseProduct(Du);
    grid.segment(rhs, i).noalias() = -a * Du + op.D * flux[static_cast<std::size_t>(i)];
  }

  // adds (P^{-1} D^T K e_node c) to block i
  auto add_dual = [&](int i, int node, double c) {
    const auto& op = grid.block(i);
    const double kc = kappa[static_cast<std::size_t>(i)](node) * c;
    if (kc == 0.0) return;
    grid.segment(rhs, i) += kc * op.D.row(node).transpose().cwiseQuotient(op.weights);
  };

  // interfaces: left block L (last node), right block R (first node)
  const int interfaces = ring ? I : I - 1;
  for (int k = 0; k < interfaces; ++k) {
    const int L = k;
    const int R = (k + 1) % I;
    const int nL = grid.block_size(L) - 1;
    const double uL = grid.segment(u, L)(nL);
    const double uR = grid.segment(u, R)(0);
    const double FL = flux[static_cast<std::size_t>(L)](nL);
    const double FR = flux[static_cast<std::size_t>(R)](0);
    const double jump = uR - uL;
    const double central = 0.5 * (FR - FL);
    grid.segment(rhs, L)(nL) += (central + cfg.tau_interface * jump) / grid.block(L).weights(nL);
    grid.segment(rhs, R)(0) +=
        (central - a * jump - cfg.tau_interface * jump) / grid.block(R).weights(0);
    add_dual(L, nL, 0.5 * jump);
    add_dual(R, 0, 0.5 * jump);
  }

  if (!ring) {
    const int last = I - 1;
    const int nN = grid.block_size(last) - 1;
    const double gL = boundary_value(cfg.g_left, t, "left");
    const double gR = boundary_value(cfg.g_right, t, "right");
    const auto& first_op = grid.block(0);
    const auto& last_op = grid.block(last);
    const double u0 = u(0);
    const double uN = grid.segment(u, last)(nN);
    const double F0 = flux.front()(0);
    const double FN = flux.back()(nN);
    if (cfg.boundary == BoundaryMode::Flux) {
      rhs(0) += cfg.sigma0 * (a * u0 - F0 - gL) / first_op.weights(0);
      grid.segment(rhs, last)(nN) += -cfg.sigma1 * (FN - gR) / last_op.weights(nN);
    } else {
      const double w0 = first_op.weights(0);
      const double wN = last_op.weights(nN);
      const double tau0 = a + kappa.front()(0) / w0;
      const double tauN = kappa.back()(nN) / wN;
      rhs(0) -= tau0 * (u0 - gL) / w0;
      grid.segment(rhs, last)(nN) -= tauN * (uN - gR) / wN;
      add_dual(0, 0, u0 - gL);
      add_dual(last, nN, -(uN - gR));
    }
  }
  add_forcing(grid, cfg, t, rhs);
  return rhs;
}

double discrete_energy(const BlockGrid& grid, const Vector& u) {
  if (u.size() != grid.size()) throw ContractError("discrete_energy: state size mismatch");
  double e = 0.0;
  for (int i = 0; i < grid.block_count(); ++i) {
    const auto ui = grid.segment(u, i);
    e += ui.dot(grid.block(i).weights.cwiseProduct(ui));
  }
  return e;
}

double viscous_term(const BlockGrid& grid, const SolveConfig& cfg, const Vector& u) {
  double v = 0.0;
  for (int i = 0; i < grid.block_count(); ++i) {
    const auto& op = grid.block(i);
    const Vector Du = op.D * grid.segment(u, i);
    v += 2.0 * Du.dot(op.weights.cwiseProduct(block_kappa(op, cfg)).cwiseProduct(Du));
  }
  return v;
}

double flux_energy_rate(double a, double u0, double uN, double gL, double gR) {
  return 2.0 * u0 * gL - a * u0 * u0 + 2.0 * uN * gR - a * uN * uN;
}

double max_kappa(const BlockGrid& grid, const SolveConfig& cfg) {
  double m = 0.0;
  for (const auto& op : grid.blocks()) {
    const Vector k = block_kappa(op, cfg);
    m = std::max(m, k.maxCoeff());
  }
  return m;
}

}  // namespace rbfsbp

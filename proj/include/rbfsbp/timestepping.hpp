#pragma once

#include <functional>

#include "rbfsbp/types.hpp"

namespace rbfsbp {

using RhsFn = std::function<Vector(const Vector& u, double t)>;

/// The two intermediate Shu-Osher stages and the new state.
struct SsprkStages {
  Vector u1;
  Vector u2;
  Vector next;
};

/// SSPRK(3,3):
///   u1 = u + dt L(u, t)
///   u2 = 3/4 u + 1/4 (u1 + dt L(u1, t + dt))
///   u+ = 1/3 u + 2/3 (u2 + dt L(u2, t + dt/2))
/// Throws NonFiniteStateError(stage) if a stage (1, 2, 3) is not finite.
SsprkStages ssprk33_stages(const RhsFn& rhs, const Vector& u, double t, double dt);
Vector ssprk33_step(const RhsFn& rhs, const Vector& u, double t, double dt);

/// Uniform steps of size dt, the last one truncated to land on t_end.
struct TimeLoop {
  double dt = 0.0;
  double t_end = 0.0;

  /// ceil(t_end / dt), ignoring a remainder at rounding level.
  int steps() const;
  /// Time after step k (0 <= k <= steps()).
  double time(int k) const;
};

/// dt = cfl * h / max(|a| + kappa_max / h, floor).
TimeLoop cfl_time_loop(double t_end, double h, double speed, double kappa_max, double cfl = 0.1,
                       double floor = 1e-12);

/// Called after step k with the state at loop.time(k); k = 0 is the initial
/// state.
using StepObserver = std::function<void(int step, double t, const Vector& u)>;

Vector integrate(const RhsFn& rhs, Vector u, const TimeLoop& loop,
                 const StepObserver& observer = {});

}  // namespace rbfsbp

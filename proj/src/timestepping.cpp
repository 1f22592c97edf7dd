#include "rbfsbp/timestepping.hpp"

#include <algorithm>
#include <cmath>

#include "rbfsbp/errors.hpp"

namespace rbfsbp {

namespace {

void check_finite(const Vector& v, int stage, double t) {
  if (!v.allFinite()) {
    throw NonFiniteStateError("non-finite state in SSPRK stage " + std::to_string(stage) +
                                  " of the step starting at t = " + std::to_string(t),
                              stage);
  }
}

}  // namespace

SsprkStages ssprk33_stages(const RhsFn& rhs, const Vector& u, double t, double dt) {
  if (!(dt > 0.0)) throw ContractError("ssprk33: dt must be positive");
  SsprkStages s;
  s.u1 = u + dt * rhs(u, t);
  check_finite(s.u1, 1, t);
  s.u2 = 0.75 * u + 0.25 * (s.u1 + dt * rhs(s.u1, t + dt));
  check_finite(s.u2, 2, t);
  s.next = (1.0 / 3.0) * u + (2.0 / 3.0) * (s.u2 + dt * rhs(s.u2, t + 0.5 * dt));
  check_finite(s.next, 3, t);
  return s;
}

Vector ssprk33_step(const RhsFn& rhs, const Vector& u, double t, double dt) {
  return ssprk33_stages(rhs, u, t, dt).next;
}

int TimeLoop::steps() const {
  return static_cast<int>(std::ceil(t_end / dt * (1.0 - 1e-12)));
}

double TimeLoop::time(int k) const {
  return k >= steps() ? t_end : std::min(k * dt, t_end);
}

TimeLoop cfl_time_loop(double t_end, double h, double speed, double kappa_max, double cfl,
                       double floor) {
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (!(h > 0.0) || !(cfl > 0.0)) throw ConfigError("h and cfl must be positive");
  const double scale = std::max(std::abs(speed) + kappa_max / h, floor);
  return {cfl * h / scale, t_end};
}

Vector integrate(const RhsFn& rhs, Vector u, const TimeLoop& loop, const StepObserver& observer) {
  if (!(loop.dt > 0.0)) throw ContractError("integrate: dt must be positive");
  if (observer) observer(0, 0.0, u);
  const int n = loop.steps();
  for (int k = 0; k < n; ++k) {
    const double t = loop.time(k);
    const double dt = loop.time(k + 1) - t;
    u = ssprk33_step(rhs, u, t, dt);
    if (observer) observer(k + 1, loop.time(k + 1), u);
  }
  return u;
}

}  // namespace rbfsbp

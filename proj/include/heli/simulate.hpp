#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "heli/control.hpp"
#include "heli/errors.hpp"
#include "heli/reference.hpp"
#include "heli/state_space.hpp"
#include "heli/types.hpp"

namespace heli {

struct SimConfig {
  double dt = 0.005;  // s
  double duration = 0.0;
  RigidBodyState initial_state = RigidBodyState::Zero();
  Vec3 initial_position = Vec3::Zero();  // local-horizon N, E, A

  // dt must be positive, duration >= dt, and dt <= tau_f / 5 so the fastest
  // rotor mode is resolved. Throws ConfigError.
  void validate(double tau_f) const;
};

// One record per step; controls are stored both before and after saturation.
struct SimStep {
  double t;
  RigidBodyState x;
  ControlInput u_raw;  // -F x_aug, pre-saturation
  ControlInput u;      // post-saturation, applied to the plant
  std::array<bool, kInputDim> saturated;
  Vec3 vel_lh;   // V_x, V_y, V_z
  Vec3 pos_lh;   // N, E, A
  Vec3 ref_pos;  // reference N, E, A
  Vec3 error;    // ref_pos - pos_lh
};

struct SimOutput {
  std::vector<SimStep> steps;
  double dt() const { return steps.size() > 1 ? steps[1].t - steps[0].t : 0.0; }
};

// Classical 4th-order Runge-Kutta update for x_dot = f(x, t).
template <class F>
Eigen::VectorXd rk4_step(F&& f, const Eigen::VectorXd& x, double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
  const Eigen::VectorXd k1 = f(x, t);
  const Eigen::VectorXd k2 = f(x + (0.5 * dt) * k1, t + 0.5 * dt);
  const Eigen::VectorXd k3 = f(x + (0.5 * dt) * k2, t + 0.5 * dt);
  const Eigen::VectorXd k4 = f(x + dt * k3, t + dt);
  Eigen::VectorXd next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) throw NumericalError("rk4_step: non-finite derivative or state");
  return next;
}

// Closed-loop simulation. Per step: body velocities are rotated into the
// local horizon and the N, E, A position integrated (trapezoidal); the
// position error feeds the augmented state; the saturated control is held
// constant while the 14-state plant advances one RK4 step. Deterministic.
// Throws NumericalError with the step index if the state leaves the finite
// range.
SimOutput run_closed_loop(const StateSpaceModel& model, const BoundedController& ctrl,
                          const ReferenceTrajectory& ref, const SimConfig& cfg);

// CSV export, one row per step, fixed 35-column header.
void write_csv(const SimOutput& out, std::ostream& os);

// Gnuplot script with trajectory / velocity / control panels, reading the CSV.
void write_gnuplot(std::ostream& os, const std::string& csv_name, bool bounded,
                   const ControlLimits& limits);

}  // namespace heli

#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include "heli/types.hpp"

namespace heli {

// Signed per-channel deflection bounds, radians. Defaults are the R-50 hard
// limits: +/-5 deg cyclic, +/-22 deg pedal, +/-10 deg collective.
struct ControlLimits {
  ControlInput lower;
  ControlInput upper;

  static ControlLimits defaults();
  // Effectively no saturation (+/- infinity); used for unconstrained runs.
  static ControlLimits unbounded();

  // Throws ConfigError unless lower_i < upper_i on every channel.
  void validate() const;
};

// Parse an optional "limits" section: per-channel {"lower_deg", "upper_deg"}
// under keys "lat", "lon", "ped", "col"; missing channels keep the defaults.
ControlLimits load_limits(const nlohmann::json& section);

// State feedback with per-channel saturation. Valid only for a diagonal
// synthesis R: then the constrained minimizer of each channel's quadratic is
// the clamp of the unconstrained one, so construction rejects non-diagonal R.
class BoundedController {
 public:
  // F is the 4 x 17 gain, R the weighting matrix used to synthesize it.
  // Throws std::invalid_argument on bad dimensions or a non-diagonal R.
  BoundedController(Eigen::MatrixXd F, const Eigen::MatrixXd& R, ControlLimits limits);

  const Eigen::MatrixXd& gain() const { return F_; }
  const ControlLimits& limits() const { return limits_; }

 private:
  Eigen::MatrixXd F_;
  ControlLimits limits_;
};

// u = -F x_aug, no clamping.
ControlInput unbounded_control(const BoundedController& ctrl, const AugmentedState& x_aug);

// Three-branch saturation: lo below, identity inside, hi above.
// Throws std::invalid_argument when lo >= hi.
double clamp_channel(double u_tilde, double lo, double hi);

// Channel-wise clamp of the unbounded control to the hard limits.
ControlInput bounded_control(const BoundedController& ctrl, const AugmentedState& x_aug);

}  // namespace heli

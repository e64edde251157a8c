#include "heli/control.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "heli/errors.hpp"

namespace heli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* channel_key(int i) {
  switch (i) {
    case in::lat: return "lat";
    case in::lon: return "lon";
    case in::ped: return "ped";
    default: return "col";
  }
}

}  // namespace

ControlLimits ControlLimits::defaults() {
  ControlLimits lim;
  lim.lower << deg2rad(-5.0), deg2rad(-5.0), deg2rad(-22.0), deg2rad(-10.0);
  lim.upper << deg2rad(5.0), deg2rad(5.0), deg2rad(22.0), deg2rad(10.0);
  return lim;
}

ControlLimits ControlLimits::unbounded() {
  ControlLimits lim;
  lim.lower.setConstant(-kInf);
  lim.upper.setConstant(kInf);
  return lim;
}

void ControlLimits::validate() const {
  for (int i = 0; i < kInputDim; ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || !(lower[i] < upper[i]))
      throw ConfigError(std::string("control limits: need lower < upper on channel '") +
                        channel_key(i) + "'");
  }
}

ControlLimits load_limits(const nlohmann::json& section) {
  ControlLimits lim = ControlLimits::defaults();
  if (!section.is_object()) throw ConfigError("limits section must be an object");
  for (int i = 0; i < kInputDim; ++i) {
    const char* key = channel_key(i);
    if (!section.contains(key)) continue;
    const auto& ch = section.at(key);
    if (!ch.is_object()) throw ConfigError(std::string("limits.") + key + " must be an object");
    if (ch.contains("lower_deg")) {
      if (!ch.at("lower_deg").is_number())
        throw ConfigError(std::string("limits.") + key + ".lower_deg must be a number");
      lim.lower[i] = deg2rad(ch.at("lower_deg").get<double>());
    }
    if (ch.contains("upper_deg")) {
      if (!ch.at("upper_deg").is_number())
        throw ConfigError(std::string("limits.") + key + ".upper_deg must be a number");
      lim.upper[i] = deg2rad(ch.at("upper_deg").get<double>());
    }
  }
  lim.validate();
  return lim;
}

BoundedController::BoundedController(Eigen::MatrixXd F, const Eigen::MatrixXd& R,
                                     ControlLimits limits)
    : F_(std::move(F)), limits_(limits) {
  if (F_.rows() != kInputDim || F_.cols() != kAugDim)
    throw std::invalid_argument("controller gain must be 4 x 17");
  if (R.rows() != kInputDim || R.cols() != kInputDim)
    throw std::invalid_argument("controller weighting R must be 4 x 4");
  // the per-channel clamp is only the constrained optimum when the channels
  // decouple in the control cost, i.e. R is diagonal
  for (Eigen::Index i = 0; i < R.rows(); ++i) {
    for (Eigen::Index j = 0; j < R.cols(); ++j) {
      if (i == j) {
        if (!(R(i, j) > 0.0))
          throw std::invalid_argument("controller weighting R must have positive diagonal");
      } else if (R(i, j) != 0.0) {
        throw std::invalid_argument(
            "per-channel saturation requires a diagonal control weighting R");
      }
    }
  }
  limits_.validate();
}

ControlInput unbounded_control(const BoundedController& ctrl, const AugmentedState& x_aug) {
  return -ctrl.gain() * x_aug;
}

double clamp_channel(double u_tilde, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("clamp_channel: need lo < hi");
  if (u_tilde < lo) return lo;
  if (u_tilde > hi) return hi;
  return u_tilde;
}

ControlInput bounded_control(const BoundedController& ctrl, const AugmentedState& x_aug) {
  ControlInput u = unbounded_control(ctrl, x_aug);
  const ControlLimits& lim = ctrl.limits();
  for (int i = 0; i < kInputDim; ++i) u[i] = clamp_channel(u[i], lim.lower[i], lim.upper[i]);
  return u;
}

}  // namespace heli

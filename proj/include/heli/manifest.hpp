#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "heli/control.hpp"
#include "heli/params.hpp"
#include "heli/reference.hpp"
#include "heli/simulate.hpp"
#include "heli/state_space.hpp"
#include "heli/tracking.hpp"

namespace heli::cli {

// What a run needs, before any file is touched. Scenario presets:
//   case1  rectangle,        eta 0.01, Q 0.01 I, R 0.01 I, unconstrained
//   case2  rect + circle,    same weights,                 unconstrained
//   case3  rectangle,        eta 5,    Q I,      R I,      constrained
//   case4  rect + circle,    same weights,                 constrained
//   custom weights file required; rectangle and constrained by default
// Explicit paths/flags override the preset.
struct RunManifest {
  std::string scenario = "custom";
  std::string params_path;
  std::string weights_path;     // empty: use the case preset
  std::string trajectory_path;  // empty: use the case default
  std::string out_dir = "out";
  std::optional<bool> bounded;  // empty: use the case default
};

struct ResolvedScenario {
  std::string label;
  R50Params params;
  StateSpaceModel model;
  TrackingWeights weights;
  ControlLimits limits;
  ReferenceTrajectory traj;
  SimConfig sim;
  bool bounded = true;
  std::filesystem::path out_dir;  // per-scenario partition of the output root
};

TrackingWeights case_weights(const std::string& scenario);
ReferenceTrajectory default_trajectory(const std::string& scenario);
bool default_bounded(const std::string& scenario);

// Parse and validate every referenced file up front. Throws ConfigError with
// the offending path or key before any computation starts.
ResolvedScenario resolve(const RunManifest& manifest);

}  // namespace heli::cli

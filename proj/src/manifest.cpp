#include "heli/manifest.hpp"

#include <fstream>
#include <json.hpp>

#include "heli/errors.hpp"

namespace heli::cli {
namespace {

// Built-in parameter set used when no --params file is given. The control
// derivatives and time constants are the published R-50 hover values; the
// stability derivatives are a desk-scale working set (the published
// identification campaign does not list them). They are chosen so the open
// loop is strictly stable with a stiff enough speed-to-pitch/roll coupling
// (M_u, L_v) that deflection-limited flight settles near the commanded point
// instead of running away: the speed a railed cyclic can sustain is roughly
// M_a·|A_lon + A_c·C_lon|·δ_max / M_u, and the lateral twin with L_b, B_lat,
// L_v, so these values cap railed drift at a few ft/s while staying well
// inside the Routh bound g·M_u < (|X_u| + M_a·τ_f)·|X_u|·M_a·τ_f.
// config/r50_hover.json ships the same numbers.
R50Params desk_hover_params() {
  R50Params p;
  p.X_u = -1.5;
  p.Y_v = -1.5;
  p.L_u = 0.0;
  p.L_v = -0.35;
  p.M_u = 0.12;
  p.M_v = 0.0;
  p.X_a = -32.2;
  p.Y_b = 32.2;
  p.L_b = 166.0;
  p.M_a = 82.0;
  p.Z_w = -1.2;
  p.Z_a = -1.25;
  p.Z_b = -0.68;
  p.Z_r = 0.0;
  p.N_v = 0.005;
  p.N_p = 0.0;
  p.N_w = 0.0;
  p.N_r = -4.0;
  p.N_rfb = -33.1;
  p.L_w = 0.0;
  p.M_w = 0.0;
  p.K_r = 9.6;
  p.K_rfb = -9.6;
  p.A_b = 0.37;
  p.B_a = 0.34;
  p.A_c = -0.067;
  p.B_d = 0.062;
  p.B_lat = 0.14;
  p.B_lon = 0.0138;
  p.A_lat = 0.0313;
  p.A_lon = -0.1;
  p.Z_col = -45.8;
  p.M_col = 0.0;
  p.N_col = -3.33;
  p.N_ped = 33.1;
  p.D_lat = 0.273;
  p.C_lon = -0.259;
  p.Y_ped = 0.0;
  p.tau_f = 0.046;
  p.tau_s = 0.342;
  p.tau_p = 0.0991;
  p.h_cg = -0.411;
  p.validate();
  return p;
}

nlohmann::json read_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string(what) + " file not found: " + path);
  try {
    return nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/true,
                                 /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string(what) + " file " + path + ": " + e.what());
  }
}

bool known_scenario(const std::string& s) {
  return s == "case1" || s == "case2" || s == "case3" || s == "case4" || s == "custom";
}

std::array<Vec3, 4> default_corners() {
  // 400 ft x 200 ft circuit at 50 ft altitude
  return {Vec3(0, 0, 50), Vec3(400, 0, 50), Vec3(400, 200, 50), Vec3(0, 200, 50)};
}

Vec3 parse_vec3_field(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError(std::string("sim.") + what + " must be an array of 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number())
      throw ConfigError(std::string("sim.") + what + " must be an array of 3 numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

// optional per-run overrides carried inside the trajectory document
void apply_sim_overrides(const nlohmann::json& doc, SimConfig& sim) {
  if (!doc.contains("sim")) return;
  const auto& s = doc.at("sim");
  if (!s.is_object()) throw ConfigError("trajectory: 'sim' must be an object");
  if (s.contains("dt")) {
    if (!s.at("dt").is_number()) throw ConfigError("sim.dt must be a number");
    sim.dt = s.at("dt").get<double>();
  }
  if (s.contains("duration")) {
    if (!s.at("duration").is_number()) throw ConfigError("sim.duration must be a number");
    sim.duration = s.at("duration").get<double>();
  }
  if (s.contains("initial_position"))
    sim.initial_position = parse_vec3_field(s.at("initial_position"), "initial_position");
  if (s.contains("initial_state")) {
    const auto& x0 = s.at("initial_state");
    if (!x0.is_array() || x0.size() != kStateDim)
      throw ConfigError("sim.initial_state must be an array of 14 numbers");
    for (int i = 0; i < kStateDim; ++i) {
      if (!x0[i].is_number())
        throw ConfigError("sim.initial_state must be an array of 14 numbers");
      sim.initial_state[i] = x0[i].get<double>();
    }
  }
}

}  // namespace

TrackingWeights case_weights(const std::string& scenario) {
  if (!known_scenario(scenario)) throw ConfigError("unknown scenario '" + scenario + "'");
  if (scenario == "custom")
    throw ConfigError("scenario 'custom' needs an explicit weights file");
  TrackingWeights w;
  const bool low = scenario == "case1" || scenario == "case2";
  w.eta = low ? 0.01 : 5.0;
  const double scale = low ? 0.01 : 1.0;
  w.Q = scale * Eigen::MatrixXd::Identity(kAugDim, kAugDim);
  w.R = scale * Eigen::MatrixXd::Identity(kInputDim, kInputDim);
  w.validate();
  return w;
}

ReferenceTrajectory default_trajectory(const std::string& scenario) {
  if (!known_scenario(scenario)) throw ConfigError("unknown scenario '" + scenario + "'");
  // slow enough that the deflection-limited presets can keep up with the
  // reference; the railed built-in plant tops out near 4-6 ft/s
  const double speed = 3.0;      // ft/s
  const double hold_time = 3.0;  // s at each corner
  if (scenario == "case2" || scenario == "case4") {
    const double radius = 100.0;  // ft
    const auto corners = default_corners();
    Vec3 leg = corners[0] - corners[3];
    leg /= leg.norm();
    const double sweep = 2.0 * kPi;
    const Vec3 center = corners[0] + radius * Vec3(-leg[1], leg[0], 0.0);
    return make_rect_circle(corners, speed, hold_time, center, radius, speed / radius, sweep);
  }
  return make_rectangle(default_corners(), speed, hold_time);
}

bool default_bounded(const std::string& scenario) {
  if (!known_scenario(scenario)) throw ConfigError("unknown scenario '" + scenario + "'");
  // the low-weight cases are run without input constraints
  return !(scenario == "case1" || scenario == "case2");
}

ResolvedScenario resolve(const RunManifest& manifest) {
  if (!known_scenario(manifest.scenario))
    throw ConfigError("unknown scenario '" + manifest.scenario +
                      "' (expected case1, case2, case3, case4 or custom)");

  R50Params params;
  ControlLimits limits = ControlLimits::defaults();
  if (manifest.params_path.empty()) {
    params = desk_hover_params();
  } else {
    const nlohmann::json doc = read_json_file(manifest.params_path, "params");
    params = load_params(doc);
    if (doc.contains("limits")) limits = load_limits(doc.at("limits"));
  }

  TrackingWeights weights = manifest.weights_path.empty()
                                ? case_weights(manifest.scenario)
                                : load_weights_file(manifest.weights_path);

  SimConfig sim;
  std::optional<ReferenceTrajectory> traj;
  if (manifest.trajectory_path.empty()) {
    traj = default_trajectory(manifest.scenario);
    sim.duration = traj->total_duration();
    sim.initial_position = traj->start();
  } else {
    const nlohmann::json doc = read_json_file(manifest.trajectory_path, "trajectory");
    traj = load_trajectory(doc);
    sim.duration = traj->total_duration();
    sim.initial_position = traj->start();
    apply_sim_overrides(doc, sim);
  }
  sim.validate(params.tau_f);

  ResolvedScenario rs{manifest.scenario,
                      params,
                      build_model(params),
                      weights,
                      limits,
                      *std::move(traj),
                      sim,
                      manifest.bounded.value_or(default_bounded(manifest.scenario)),
                      std::filesystem::path(manifest.out_dir) / manifest.scenario};
  return rs;
}

}  // namespace heli::cli

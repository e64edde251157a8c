#pragma once

#include <json.hpp>
#include <string>

namespace heli {

// Full parameter set of the R-50 linear model: stability derivatives, control
// derivatives, time constants, trim velocities and gravity. This is the single
// source of plant numbers; every physics key must be present in the config
// document (no silent defaults), only trim and gravity carry defaults.
//
// Units: forces per unit state in 1/s, ft/s^2 per rad and rad/s^2 per rad as
// dimensionally implied; time constants in s; lengths in ft; angles in rad.
struct R50Params {
  // speed derivatives
  double X_u = 0, Y_v = 0, L_u = 0, L_v = 0, M_u = 0, M_v = 0;
  // rotor force derivatives
  double X_a = 0, Y_b = 0;
  // flapping-spring derivatives
  double L_b = 0, M_a = 0;
  // heave / yaw derivatives
  double Z_w = 0, Z_a = 0, Z_b = 0, Z_r = 0;
  double N_v = 0, N_p = 0, N_w = 0, N_r = 0, N_rfb = 0;
  double L_w = 0, M_w = 0;
  // yaw-rate feedback filter gains
  double K_r = 0, K_rfb = 0;
  // rotor / stabilizer-bar cross-coupling
  double A_b = 0, B_a = 0, A_c = 0, B_d = 0;
  // control derivatives
  double B_lat = 0, B_lon = 0, A_lat = 0, A_lon = 0;
  double Z_col = 0, M_col = 0, N_col = 0, N_ped = 0;
  double D_lat = 0, C_lon = 0, Y_ped = 0;
  // time constants and cg height (tau_p and h_cg are carried but enter no row)
  double tau_f = 0, tau_s = 0, tau_p = 0, h_cg = 0;
  // environment
  double g = 32.174;  // ft/s^2
  // trim velocities; nonzero values switch on the centrifugal coupling rows
  double u0 = 0, v0 = 0, w0 = 0;

  // Throws ConfigError unless tau_f > 0, tau_s > 0, g > 0 and every field is finite.
  void validate() const;
};

// Parse a parameter document with sections "derivatives", "control_derivatives",
// "time_constants" (all required key-by-key) plus optional "trim" and
// "environment". Throws ConfigError naming the first missing or invalid key.
R50Params load_params(const nlohmann::json& doc);
R50Params load_params_file(const std::string& path);

struct GearingRatios {
  double K_d;  // lateral Bell-mixer gearing, B_d / B_lat
  double K_c;  // longitudinal Bell-mixer gearing, A_c / A_lon
};

// Throws std::domain_error when B_lat or A_lon is zero.
GearingRatios gearing_ratios(const R50Params& params);

}  // namespace heli

#include "heli/params.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "heli/errors.hpp"

namespace heli {
namespace {

struct FieldRef {
  const char* section;
  const char* key;
  double R50Params::*member;
};

// Every physics key, grouped by config section. All are required.
constexpr std::array<FieldRef, 42> kRequiredFields{{
    {"derivatives", "X_u", &R50Params::X_u},
    {"derivatives", "Y_v", &R50Params::Y_v},
    {"derivatives", "L_u", &R50Params::L_u},
    {"derivatives", "L_v", &R50Params::L_v},
    {"derivatives", "M_u", &R50Params::M_u},
    {"derivatives", "M_v", &R50Params::M_v},
    {"derivatives", "X_a", &R50Params::X_a},
    {"derivatives", "Y_b", &R50Params::Y_b},
    {"derivatives", "L_b", &R50Params::L_b},
    {"derivatives", "M_a", &R50Params::M_a},
    {"derivatives", "Z_w", &R50Params::Z_w},
    {"derivatives", "Z_a", &R50Params::Z_a},
    {"derivatives", "Z_b", &R50Params::Z_b},
    {"derivatives", "Z_r", &R50Params::Z_r},
    {"derivatives", "N_v", &R50Params::N_v},
    {"derivatives", "N_p", &R50Params::N_p},
    {"derivatives", "N_w", &R50Params::N_w},
    {"derivatives", "N_r", &R50Params::N_r},
    {"derivatives", "N_rfb", &R50Params::N_rfb},
    {"derivatives", "L_w", &R50Params::L_w},
    {"derivatives", "M_w", &R50Params::M_w},
    {"derivatives", "K_r", &R50Params::K_r},
    {"derivatives", "K_rfb", &R50Params::K_rfb},
    {"derivatives", "A_b", &R50Params::A_b},
    {"derivatives", "B_a", &R50Params::B_a},
    {"derivatives", "A_c", &R50Params::A_c},
    {"derivatives", "B_d", &R50Params::B_d},
    {"control_derivatives", "B_lat", &R50Params::B_lat},
    {"control_derivatives", "B_lon", &R50Params::B_lon},
    {"control_derivatives", "A_lat", &R50Params::A_lat},
    {"control_derivatives", "A_lon", &R50Params::A_lon},
    {"control_derivatives", "Z_col", &R50Params::Z_col},
    {"control_derivatives", "M_col", &R50Params::M_col},
    {"control_derivatives", "N_col", &R50Params::N_col},
    {"control_derivatives", "N_ped", &R50Params::N_ped},
    {"control_derivatives", "D_lat", &R50Params::D_lat},
    {"control_derivatives", "C_lon", &R50Params::C_lon},
    {"control_derivatives", "Y_ped", &R50Params::Y_ped},
    {"time_constants", "tau_f", &R50Params::tau_f},
    {"time_constants", "tau_s", &R50Params::tau_s},
    {"time_constants", "tau_p", &R50Params::tau_p},
    {"time_constants", "h_cg", &R50Params::h_cg},
}};

double require_num(const nlohmann::json& section, const char* section_name, const char* key) {
  if (!section.contains(key))
    throw ConfigError(std::string("missing key '") + key + "' in section '" + section_name + "'");
  const auto& value = section.at(key);
  if (!value.is_number())
    throw ConfigError(std::string("key '") + key + "' in section '" + section_name +
                      "' is not a number");
  const double x = value.get<double>();
  if (!std::isfinite(x))
    throw ConfigError(std::string("key '") + key + "' in section '" + section_name +
                      "' is not finite");
  return x;
}

double optional_num(const nlohmann::json& doc, const char* section_name, const char* key,
                    double fallback) {
  if (!doc.contains(section_name)) return fallback;
  const auto& section = doc.at(section_name);
  if (!section.contains(key)) return fallback;
  return require_num(section, section_name, key);
}

}  // namespace

void R50Params::validate() const {
  if (!(tau_f > 0.0)) throw ConfigError("tau_f must be positive, got " + std::to_string(tau_f));
  if (!(tau_s > 0.0)) throw ConfigError("tau_s must be positive, got " + std::to_string(tau_s));
  if (!(g > 0.0)) throw ConfigError("g must be positive, got " + std::to_string(g));
  for (const auto& f : kRequiredFields) {
    if (!std::isfinite(this->*(f.member)))
      throw ConfigError(std::string("parameter '") + f.key + "' is not finite");
  }
  for (double t : {g, u0, v0, w0}) {
    if (!std::isfinite(t)) throw ConfigError("environment/trim parameter is not finite");
  }
}

R50Params load_params(const nlohmann::json& doc) {
  R50Params p;
  for (const auto& f : kRequiredFields) {
    if (!doc.contains(f.section))
      throw ConfigError(std::string("missing section '") + f.section + "'");
    p.*(f.member) = require_num(doc.at(f.section), f.section, f.key);
  }
  p.g = optional_num(doc, "environment", "g", p.g);
  p.u0 = optional_num(doc, "trim", "u0", 0.0);
  p.v0 = optional_num(doc, "trim", "v0", 0.0);
  p.w0 = optional_num(doc, "trim", "w0", 0.0);
  p.validate();
  return p;
}

R50Params load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("params file not found: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("params file " + path + " failed to parse: " + e.what());
  }
  return load_params(doc);
}

GearingRatios gearing_ratios(const R50Params& params) {
  if (params.B_lat == 0.0) throw std::domain_error("gearing_ratios: B_lat is zero");
  if (params.A_lon == 0.0) throw std::domain_error("gearing_ratios: A_lon is zero");
  return {params.B_d / params.B_lat, params.A_c / params.A_lon};
}

}  // namespace heli

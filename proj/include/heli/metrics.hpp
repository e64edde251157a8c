#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "heli/simulate.hpp"

namespace heli {

// Mean of squared pointwise differences. Throws std::invalid_argument on a
// length mismatch or empty series.
double mse(const std::vector<double>& actual, const std::vector<double>& reference);

// Per-channel mean-square tracking error: velocity channels against the
// finite-difference of the reference position, position channels against the
// reference position directly.
struct TrackingReport {
  std::string label;
  double eta = 0.0;
  double q_scale = 0.0;  // leading diagonal entry of Q
  double r_scale = 0.0;  // leading diagonal entry of R
  std::vector<std::string> channels;  // V_x, V_y, V_z, N, E, A
  std::vector<double> values;         // ft^2/s^2 for velocity, ft^2 for position
};

TrackingReport make_report(const SimOutput& out, const std::string& label, double eta,
                           double q_scale, double r_scale);

// Channel-wise ratio b/a; a zero denominator yields an empty optional.
// Throws std::invalid_argument when the channel sets differ.
std::vector<std::optional<double>> mse_ratios(const TrackingReport& a, const TrackingReport& b);

std::string format_report(const TrackingReport& report);
// Side-by-side table in Table-2 column order plus a ratio row; zero
// denominators print as "zero-den".
std::string format_comparison(const TrackingReport& a, const TrackingReport& b);

nlohmann::json report_json(const TrackingReport& report);
nlohmann::json comparison_json(const TrackingReport& a, const TrackingReport& b);

}  // namespace heli

#include "heli/metrics.hpp"

#include <cstdio>
#include <stdexcept>

namespace heli {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

const std::vector<std::string>& channel_names() {
  static const std::vector<std::string> names = {"V_x", "V_y", "V_z", "N", "E", "A"};
  return names;
}

// reference velocity by finite differences: central in the interior,
// one-sided at the ends
std::vector<double> ref_velocity(const std::vector<SimStep>& steps, int axis, double dt) {
  const std::size_t n = steps.size();
  std::vector<double> v(n);
  v[0] = (steps[1].ref_pos[axis] - steps[0].ref_pos[axis]) / dt;
  for (std::size_t i = 1; i + 1 < n; ++i)
    v[i] = (steps[i + 1].ref_pos[axis] - steps[i - 1].ref_pos[axis]) / (2.0 * dt);
  v[n - 1] = (steps[n - 1].ref_pos[axis] - steps[n - 2].ref_pos[axis]) / dt;
  return v;
}

}  // namespace

double mse(const std::vector<double>& actual, const std::vector<double>& reference) {
  if (actual.empty()) throw std::invalid_argument("mse: empty series");
  if (actual.size() != reference.size())
    throw std::invalid_argument("mse: series lengths differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double d = actual[i] - reference[i];
    acc += d * d;
  }
  return acc / static_cast<double>(actual.size());
}

TrackingReport make_report(const SimOutput& out, const std::string& label, double eta,
                           double q_scale, double r_scale) {
  if (out.steps.size() < 2)
    throw std::invalid_argument("tracking report needs at least two simulation records");
  const double dt = out.dt();
  const std::size_t n = out.steps.size();

  TrackingReport rep;
  rep.label = label;
  rep.eta = eta;
  rep.q_scale = q_scale;
  rep.r_scale = r_scale;
  rep.channels = channel_names();
  rep.values.reserve(6);

  std::vector<double> actual(n), reference(n);
  for (int axis = 0; axis < 3; ++axis) {
    for (std::size_t i = 0; i < n; ++i) actual[i] = out.steps[i].vel_lh[axis];
    rep.values.push_back(mse(actual, ref_velocity(out.steps, axis, dt)));
  }
  for (int axis = 0; axis < 3; ++axis) {
    for (std::size_t i = 0; i < n; ++i) {
      actual[i] = out.steps[i].pos_lh[axis];
      reference[i] = out.steps[i].ref_pos[axis];
    }
    rep.values.push_back(mse(actual, reference));
  }
  return rep;
}

std::vector<std::optional<double>> mse_ratios(const TrackingReport& a, const TrackingReport& b) {
  if (a.channels != b.channels)
    throw std::invalid_argument("mse_ratios: reports cover different channels");
  std::vector<std::optional<double>> out;
  out.reserve(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (a.values[i] == 0.0)
      out.emplace_back(std::nullopt);
    else
      out.emplace_back(b.values[i] / a.values[i]);
  }
  return out;
}

std::string format_report(const TrackingReport& report) {
  std::string s = "mean-square tracking error: " + report.label + "\n";
  s += "  eta = " + num(report.eta) + ", q = " + num(report.q_scale) +
       ", r = " + num(report.r_scale) + "\n";
  for (std::size_t i = 0; i < report.channels.size(); ++i) {
    const bool vel = report.channels[i].rfind("V_", 0) == 0;
    s += "  " + pad(report.channels[i], 4) + " " + pad(num(report.values[i]), 12) +
         (vel ? " ft^2/s^2" : " ft^2") + "\n";
  }
  return s;
}

std::string format_comparison(const TrackingReport& a, const TrackingReport& b) {
  const auto ratios = mse_ratios(a, b);
  const std::size_t w = 14;
  std::string s = "mean-square tracking error\n";
  s += "  " + pad("", 6) + pad(a.label, w) + pad(b.label, w) + "ratio\n";
  s += "  " + pad("eta", 6) + pad(num(a.eta), w) + pad(num(b.eta), w) + "\n";
  s += "  " + pad("q", 6) + pad(num(a.q_scale), w) + pad(num(b.q_scale), w) + "\n";
  s += "  " + pad("r", 6) + pad(num(a.r_scale), w) + pad(num(b.r_scale), w) + "\n";
  for (std::size_t i = 0; i < a.channels.size(); ++i) {
    s += "  " + pad(a.channels[i], 6) + pad(num(a.values[i]), w) + pad(num(b.values[i]), w) +
         (ratios[i] ? num(*ratios[i]) : std::string("zero-den")) + "\n";
  }
  return s;
}

nlohmann::json report_json(const TrackingReport& report) {
  nlohmann::json j;
  j["label"] = report.label;
  j["eta"] = report.eta;
  j["q_scale"] = report.q_scale;
  j["r_scale"] = report.r_scale;
  nlohmann::json m = nlohmann::json::object();
  for (std::size_t i = 0; i < report.channels.size(); ++i) m[report.channels[i]] = report.values[i];
  j["mse"] = m;
  return j;
}

nlohmann::json comparison_json(const TrackingReport& a, const TrackingReport& b) {
  nlohmann::json j;
  j["a"] = report_json(a);
  j["b"] = report_json(b);
  nlohmann::json r = nlohmann::json::object();
  const auto ratios = mse_ratios(a, b);
  for (std::size_t i = 0; i < a.channels.size(); ++i) {
    if (ratios[i])
      r[a.channels[i]] = *ratios[i];
    else
      r[a.channels[i]] = nullptr;
  }
  j["ratios"] = r;
  return j;
}

}  // namespace heli

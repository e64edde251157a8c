#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "heli/commands.hpp"

namespace {

std::optional<bool> parse_bounded(const std::string& raw, bool& ok) {
  ok = true;
  std::string s = raw;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  ok = false;
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LQR tracking controller for the R-50 helicopter linear model"};
  app.require_subcommand(1);

  std::string params_path, weights_path, trajectory_path;
  std::string out_dir = "out";
  std::string bounded_raw;
  std::vector<std::string> cases;

  app.add_option("--params", params_path, "plant parameter file (JSON)");
  app.add_option("--weights", weights_path, "cost weight file (JSON)");
  app.add_option("--trajectory", trajectory_path, "reference trajectory file (JSON)");
  app.add_option("--case", cases,
                 "scenario preset: case1|case2|case3|case4|custom (compare takes it twice)");
  app.add_option("--bounded", bounded_raw, "apply hard input limits: true|false");
  app.add_option("--out", out_dir, "output directory root")->capture_default_str();

  auto* synthesize = app.add_subcommand("synthesize", "solve for the feedback gain");
  auto* simulate = app.add_subcommand("simulate", "run the closed loop and report MSE");
  auto* compare = app.add_subcommand("compare", "run two scenarios and tabulate MSE ratios");
  for (auto* sub : {synthesize, simulate, compare}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? heli::cli::kExitOk : heli::cli::kExitInput;
  }

  std::optional<bool> bounded;
  if (!bounded_raw.empty()) {
    bool ok = false;
    bounded = parse_bounded(bounded_raw, ok);
    if (!ok) {
      std::cout << "error: --bounded expects true or false, got '" << bounded_raw << "'\n";
      return heli::cli::kExitInput;
    }
  }

  heli::cli::RunManifest manifest;
  manifest.params_path = params_path;
  manifest.weights_path = weights_path;
  manifest.trajectory_path = trajectory_path;
  manifest.out_dir = out_dir;
  manifest.bounded = bounded;

  if (compare->parsed()) {
    if (cases.size() != 2) {
      std::cout << "error: compare needs exactly two --case values\n";
      return heli::cli::kExitInput;
    }
    heli::cli::RunManifest a = manifest, b = manifest;
    a.scenario = cases[0];
    b.scenario = cases[1];
    return heli::cli::cmd_compare(a, b, std::cout);
  }

  if (cases.size() > 1) {
    std::cout << "error: " << (synthesize->parsed() ? "synthesize" : "simulate")
              << " takes at most one --case\n";
    return heli::cli::kExitInput;
  }
  if (!cases.empty()) manifest.scenario = cases[0];

  if (synthesize->parsed()) return heli::cli::cmd_synthesize(manifest, std::cout);
  return heli::cli::cmd_simulate(manifest, std::cout);
}

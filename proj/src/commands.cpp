#include "heli/commands.hpp"

#include <fstream>
#include <ostream>
#include <utility>

#include "heli/errors.hpp"
#include "heli/metrics.hpp"
#include "heli/riccati.hpp"

namespace heli::cli {
namespace {

template <class Fn>
int guard(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    log << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    log << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for writing: " + path.string());
  os << text;
  os.flush();
  if (!os.good()) throw ConfigError("failed writing " + path.string());
}

double spectral_abscissa(const CareSolution& sol) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& ev : sol.closed_loop_spectrum) worst = std::max(worst, ev.real());
  return worst;
}

CareSolution synthesize_gains(const ResolvedScenario& rs) {
  const AugmentedModel aug = augment(rs.model, rs.weights);
  RiccatiConfig base;
  base.tol = 1e-10;  // settle gain files well below the 1e-8 residual level
  const RiccatiConfig cfg =
      stable_synthesis_config(aug.A, aug.B, rs.weights.Q, rs.weights.R, base);
  return solve_care(aug.A, aug.B, rs.weights.Q, rs.weights.R, cfg);
}

void write_gain_file(const std::filesystem::path& path, const CareSolution& sol) {
  write_text_file(path, gain_dump(sol).dump(2) + "\n");
}

// load gains.json from the scenario partition if present, else solve and
// store it so later runs reuse the identical gain matrix
CareSolution obtain_gains(const ResolvedScenario& rs, std::ostream& log) {
  const auto path = rs.out_dir / "gains.json";
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read gain file: " + path.string());
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("gain file " + path.string() + ": " + e.what());
    }
    CareSolution sol = gain_load(doc);
    if (sol.F.rows() != kInputDim || sol.F.cols() != kAugDim)
      throw ConfigError("gain file " + path.string() + ": wrong gain dimensions");
    log << "reusing gains " << path.string() << "\n";
    return sol;
  }
  CareSolution sol = synthesize_gains(rs);
  std::filesystem::create_directories(rs.out_dir);
  write_gain_file(path, sol);
  return sol;
}

// simulate one resolved scenario, write its artifacts, return the MSE report
TrackingReport run_scenario(const ResolvedScenario& rs, std::ostream& log) {
  const CareSolution sol = obtain_gains(rs, log);
  const BoundedController ctrl(deploy_tracking_gain(sol.F, rs.weights.eta), rs.weights.R,
                               rs.bounded ? rs.limits : ControlLimits::unbounded());
  const SimOutput out = run_closed_loop(rs.model, ctrl, rs.traj, rs.sim);

  std::filesystem::create_directories(rs.out_dir);
  {
    std::ofstream csv(rs.out_dir / "sim.csv");
    if (!csv) throw ConfigError("cannot open for writing: " + (rs.out_dir / "sim.csv").string());
    write_csv(out, csv);
    csv.flush();
    if (!csv.good()) throw ConfigError("failed writing " + (rs.out_dir / "sim.csv").string());
  }
  {
    std::ofstream gp(rs.out_dir / "plots.gp");
    if (!gp) throw ConfigError("cannot open for writing: " + (rs.out_dir / "plots.gp").string());
    write_gnuplot(gp, "sim.csv", rs.bounded, rs.limits);
  }

  const TrackingReport report =
      make_report(out, rs.label, rs.weights.eta, rs.weights.Q(0, 0), rs.weights.R(0, 0));
  write_text_file(rs.out_dir / "report.txt", format_report(report));
  write_text_file(rs.out_dir / "report.json", report_json(report).dump(2) + "\n");

  log << rs.label << ": " << out.steps.size() << " records over "
      << rs.sim.duration << " s (" << (rs.bounded ? "bounded" : "unbounded") << ")\n";
  return report;
}

}  // namespace

int cmd_synthesize(const RunManifest& manifest, std::ostream& log) {
  return guard(log, [&] {
    const ResolvedScenario rs = resolve(manifest);
    const CareSolution sol = synthesize_gains(rs);
    std::filesystem::create_directories(rs.out_dir);
    const auto path = rs.out_dir / "gains.json";
    write_gain_file(path, sol);
    log << "wrote " << path.string() << "\n"
        << "residual " << sol.residual_norm << ", spectral abscissa " << spectral_abscissa(sol)
        << " (" << sol.steps << " integration steps)\n";
    return kExitOk;
  });
}

int cmd_simulate(const RunManifest& manifest, std::ostream& log) {
  return guard(log, [&] {
    const ResolvedScenario rs = resolve(manifest);
    const TrackingReport report = run_scenario(rs, log);
    log << format_report(report);
    return kExitOk;
  });
}

int cmd_compare(const RunManifest& manifest_a, const RunManifest& manifest_b, std::ostream& log) {
  return guard(log, [&] {
    ResolvedScenario rs_a = resolve(manifest_a);
    ResolvedScenario rs_b = resolve(manifest_b);
    if (rs_a.out_dir == rs_b.out_dir) {
      rs_a.out_dir += "-a";
      rs_b.out_dir += "-b";
      rs_a.label += "-a";
      rs_b.label += "-b";
    }
    const TrackingReport rep_a = run_scenario(rs_a, log);
    const TrackingReport rep_b = run_scenario(rs_b, log);

    const std::string table = format_comparison(rep_a, rep_b);
    const std::filesystem::path root(manifest_a.out_dir);
    std::filesystem::create_directories(root);
    write_text_file(root / "compare.txt", table);
    write_text_file(root / "compare.json", comparison_json(rep_a, rep_b).dump(2) + "\n");
    log << table;
    return kExitOk;
  });
}

}  // namespace heli::cli

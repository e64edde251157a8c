#pragma once

#include <iosfwd>

#include "heli/manifest.hpp"

namespace heli::cli {

// Exit codes shared by all commands: 0 ok, 1 numerical failure, 2 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitInput = 2;

// Solve the steady-state Riccati equation for the scenario and write
// gains.json; prints the residual and the spectral abscissa.
int cmd_synthesize(const RunManifest& manifest, std::ostream& log);

// Run the closed loop and write sim.csv, plots.gp, report.txt and report.json.
// Reuses gains.json from the output partition when present, synthesizing
// otherwise.
int cmd_simulate(const RunManifest& manifest, std::ostream& log);

// Simulate both scenarios and write a side-by-side MSE table with ratios
// (compare.txt / compare.json under the shared output root).
int cmd_compare(const RunManifest& manifest_a, const RunManifest& manifest_b, std::ostream& log);

}  // namespace heli::cli

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "heli/params.hpp"
#include "heli/types.hpp"

namespace heli {

// Dense plant matrices in plain first-order form x_dot = A x + B u.
// Rotor rows (a, b) and stabilizer rows (c, d) are already divided through by
// tau_f / tau_s; the phi, theta and psi rows are pure kinematic selectors.
struct StateSpaceModel {
  Eigen::MatrixXd A;  // 14 x 14
  Eigen::MatrixXd B;  // 14 x 4
  std::vector<std::string> state_labels;
  std::vector<std::string> input_labels;
};

// Assemble the linear R-50 plant from a validated parameter set. Deterministic:
// identical params give bitwise-identical matrices. Trim coupling entries are
// added only when u0, v0 or w0 is nonzero.
StateSpaceModel build_model(const R50Params& params);

}  // namespace heli

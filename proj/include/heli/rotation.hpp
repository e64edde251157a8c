#pragma once

#include <Eigen/Dense>

#include "heli/types.hpp"

namespace heli {

// Euler 3-2-1 direction cosine matrix mapping local-horizon (inertial) vectors
// into body axes. Orthonormal with determinant +1.
Eigen::Matrix3d dcm_body_from_inertial(double phi, double theta, double psi);

// Express a body-frame vector in the local-horizon frame (the transpose of the
// DCM above). Used to turn body velocities (u, v, w) into (V_x, V_y, V_z).
Vec3 body_to_local_horizon(const Vec3& vec_body, double phi, double theta, double psi);

}  // namespace heli

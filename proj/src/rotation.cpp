#include "heli/rotation.hpp"

#include <cmath>

namespace heli {

Eigen::Matrix3d dcm_body_from_inertial(double phi, double theta, double psi) {
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  const double cth = std::cos(theta), sth = std::sin(theta);
  const double cpsi = std::cos(psi), spsi = std::sin(psi);

  Eigen::Matrix3d T;
  T(0, 0) = cth * cpsi;
  T(0, 1) = cth * spsi;
  T(0, 2) = -sth;
  T(1, 0) = sphi * sth * cpsi - cphi * spsi;
  T(1, 1) = sphi * sth * spsi + cphi * cpsi;
  T(1, 2) = sphi * cth;
  T(2, 0) = cphi * sth * cpsi + sphi * spsi;
  T(2, 1) = cphi * sth * spsi - sphi * cpsi;
  T(2, 2) = cphi * cth;
  return T;
}

Vec3 body_to_local_horizon(const Vec3& vec_body, double phi, double theta, double psi) {
  return dcm_body_from_inertial(phi, theta, psi).transpose() * vec_body;
}

}  // namespace heli

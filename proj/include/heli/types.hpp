#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace heli {

inline constexpr int kStateDim = 14;
inline constexpr int kInputDim = 4;
inline constexpr int kErrorDim = 3;
inline constexpr int kAugDim = kErrorDim + kStateDim;

// Index layout of the rigid-body state vector. Heading psi is carried as a
// 14th state with kinematics psi_dot = r.
namespace st {
inline constexpr int u = 0;      // body longitudinal velocity, ft/s
inline constexpr int v = 1;      // body lateral velocity, ft/s
inline constexpr int p = 2;      // roll rate, rad/s
inline constexpr int q = 3;      // pitch rate, rad/s
inline constexpr int phi = 4;    // roll angle, rad
inline constexpr int theta = 5;  // pitch angle, rad
inline constexpr int a = 6;      // main-rotor longitudinal flap, rad
inline constexpr int b = 7;      // main-rotor lateral flap, rad
inline constexpr int w = 8;      // body vertical velocity, ft/s
inline constexpr int r = 9;      // yaw rate, rad/s
inline constexpr int rfb = 10;   // yaw-rate feedback filter state, rad/s
inline constexpr int c = 11;     // stabilizer-bar longitudinal flap, rad
inline constexpr int d = 12;     // stabilizer-bar lateral flap, rad
inline constexpr int psi = 13;   // heading angle, rad
}  // namespace st

// Input channel ordering: lateral cyclic, longitudinal cyclic, pedal, collective.
namespace in {
inline constexpr int lat = 0;
inline constexpr int lon = 1;
inline constexpr int ped = 2;
inline constexpr int col = 3;
}  // namespace in

using RigidBodyState = Eigen::Matrix<double, kStateDim, 1>;
using ControlInput = Eigen::Matrix<double, kInputDim, 1>;
using AugmentedState = Eigen::Matrix<double, kAugDim, 1>;  // {position error, rigid-body state}
using Vec3 = Eigen::Vector3d;

const std::vector<std::string>& state_labels();
const std::vector<std::string>& input_labels();

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }

}  // namespace heli

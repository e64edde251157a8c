#include "heli/state_space.hpp"

namespace heli {

const std::vector<std::string>& state_labels() {
  static const std::vector<std::string> labels = {"u", "v", "p",   "q", "phi", "theta", "a",
                                                  "b", "w", "r",   "rfb", "c", "d",     "psi"};
  return labels;
}

const std::vector<std::string>& input_labels() {
  static const std::vector<std::string> labels = {"dlat", "dlon", "dped", "dcol"};
  return labels;
}

StateSpaceModel build_model(const R50Params& m) {
  m.validate();

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(kStateDim, kStateDim);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(kStateDim, kInputDim);

  // translational force rows
  A(st::u, st::u) = m.X_u;
  A(st::u, st::theta) = -m.g;
  A(st::u, st::a) = m.X_a;
  A(st::v, st::v) = m.Y_v;
  A(st::v, st::phi) = m.g;
  A(st::v, st::b) = m.Y_b;

  // angular-rate rows
  A(st::p, st::u) = m.L_u;
  A(st::p, st::v) = m.L_v;
  A(st::p, st::b) = m.L_b;
  A(st::p, st::w) = m.L_w;
  A(st::q, st::u) = m.M_u;
  A(st::q, st::v) = m.M_v;
  A(st::q, st::a) = m.M_a;
  A(st::q, st::w) = m.M_w;

  // attitude and heading kinematics (selector rows)
  A(st::phi, st::p) = 1.0;
  A(st::theta, st::q) = 1.0;
  A(st::psi, st::r) = 1.0;

  // main-rotor flap rows, divided through by tau_f
  A(st::a, st::q) = -1.0;
  A(st::a, st::a) = -1.0 / m.tau_f;
  A(st::a, st::b) = m.A_b / m.tau_f;
  A(st::a, st::c) = m.A_c / m.tau_f;
  A(st::b, st::p) = -1.0;
  A(st::b, st::a) = m.B_a / m.tau_f;
  A(st::b, st::b) = -1.0 / m.tau_f;
  A(st::b, st::d) = m.B_d / m.tau_f;

  // heave row
  A(st::w, st::a) = m.Z_a;
  A(st::w, st::b) = m.Z_b;
  A(st::w, st::w) = m.Z_w;
  A(st::w, st::r) = m.Z_r;

  // yaw row and rate-feedback filter row
  A(st::r, st::v) = m.N_v;
  A(st::r, st::p) = m.N_p;
  A(st::r, st::w) = m.N_w;
  A(st::r, st::r) = m.N_r;
  A(st::r, st::rfb) = m.N_rfb;
  A(st::rfb, st::r) = m.K_r;
  A(st::rfb, st::rfb) = m.K_rfb;

  // stabilizer-bar flap rows, divided through by tau_s
  A(st::c, st::q) = -1.0;
  A(st::c, st::c) = -1.0 / m.tau_s;
  A(st::d, st::p) = -1.0;
  A(st::d, st::d) = -1.0 / m.tau_s;

  // centrifugal trim couplings, present only away from hover trim
  if (m.w0 != 0.0) {
    A(st::u, st::q) += m.w0;
    A(st::v, st::p) += m.w0;
  }
  if (m.v0 != 0.0) {
    A(st::u, st::r) += m.v0;
    A(st::w, st::p) -= m.v0;
  }
  if (m.u0 != 0.0) {
    A(st::v, st::r) -= m.u0;
    A(st::w, st::q) += m.u0;
  }

  B(st::v, in::ped) = m.Y_ped;
  B(st::q, in::col) = m.M_col;
  B(st::a, in::lat) = m.A_lat / m.tau_f;
  B(st::a, in::lon) = m.A_lon / m.tau_f;
  B(st::b, in::lat) = m.B_lat / m.tau_f;
  B(st::b, in::lon) = m.B_lon / m.tau_f;
  B(st::w, in::col) = m.Z_col;
  B(st::r, in::ped) = m.N_ped;
  B(st::r, in::col) = m.N_col;
  B(st::c, in::lon) = m.C_lon / m.tau_s;
  B(st::d, in::lat) = m.D_lat / m.tau_s;

  return {std::move(A), std::move(B), state_labels(), input_labels()};
}

}  // namespace heli

#include "heli/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "heli/rotation.hpp"
#include "heli/tracking.hpp"

namespace heli {
namespace {

constexpr double kStateGuard = 1e9;  // anything past this is treated as divergence

Vec3 local_horizon_velocity(const RigidBodyState& x) {
  return body_to_local_horizon(Vec3(x[st::u], x[st::v], x[st::w]), x[st::phi], x[st::theta],
                               x[st::psi]);
}

void append_num(std::string& row, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), ",%.10g", v);
  row += buf;
}

}  // namespace

void SimConfig::validate(double tau_f) const {
  if (!(dt > 0.0)) throw ConfigError("simulation: dt must be positive");
  if (!(duration >= dt)) throw ConfigError("simulation: duration must be at least one step");
  if (!(tau_f > 0.0)) throw ConfigError("simulation: rotor time constant must be positive");
  if (dt > tau_f / 5.0)
    throw ConfigError("simulation: dt = " + std::to_string(dt) +
                      " is too coarse for the rotor time constant " + std::to_string(tau_f) +
                      " (need dt <= tau_f / 5)");
  if (!initial_state.allFinite() || !initial_position.allFinite())
    throw ConfigError("simulation: initial state and position must be finite");
}

SimOutput run_closed_loop(const StateSpaceModel& model, const BoundedController& ctrl,
                          const ReferenceTrajectory& ref, const SimConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ConfigError("simulation: dt must be positive");
  if (!(cfg.duration >= cfg.dt))
    throw ConfigError("simulation: duration must be at least one step");

  const long n_steps = static_cast<long>(std::floor(cfg.duration / cfg.dt + 1e-9));
  SimOutput out;
  out.steps.reserve(n_steps + 1);

  RigidBodyState x = cfg.initial_state;
  Vec3 pos = cfg.initial_position;
  Vec3 vel = local_horizon_velocity(x);
  ControlInput u = ControlInput::Zero();

  for (long i = 0; i <= n_steps; ++i) {
    const double t = static_cast<double>(i) * cfg.dt;

    SimStep step;
    step.t = t;
    step.x = x;
    step.vel_lh = vel;
    step.pos_lh = pos;
    step.ref_pos = ref.position_at(t);
    step.error = step.ref_pos - pos;

    const AugmentedState x_aug = compose(step.error, x);
    step.u_raw = unbounded_control(ctrl, x_aug);
    step.u = bounded_control(ctrl, x_aug);
    for (int k = 0; k < kInputDim; ++k) step.saturated[k] = step.u[k] != step.u_raw[k];
    u = step.u;
    out.steps.push_back(step);
    if (i == n_steps) break;

    // hold the control over the step while the plant advances
    auto plant = [&](const Eigen::VectorXd& xs, double) -> Eigen::VectorXd {
      return model.A * xs + model.B * u;
    };
    x = rk4_step(plant, x, t, cfg.dt);
    if (x.lpNorm<Eigen::Infinity>() > kStateGuard)
      throw NumericalError("simulation diverged at step " + std::to_string(i + 1) + " (t = " +
                           std::to_string(t + cfg.dt) + " s)");

    const Vec3 vel_next = local_horizon_velocity(x);
    pos += (0.5 * cfg.dt) * (vel + vel_next);
    vel = vel_next;
  }
  return out;
}

void write_csv(const SimOutput& out, std::ostream& os) {
  os << "t,u,v,p,q,phi,theta,a,b,w,r,rfb,c,d,psi,"
        "dlat_raw,dlon_raw,dped_raw,dcol_raw,dlat,dlon,dped,dcol,"
        "Vx,Vy,Vz,N,E,A,Nref,Eref,Aref,eN,eE,eA\n";
  std::string row;
  for (const SimStep& s : out.steps) {
    row.clear();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", s.t);
    row += buf;
    for (int i = 0; i < kStateDim; ++i) append_num(row, s.x[i]);
    for (int i = 0; i < kInputDim; ++i) append_num(row, s.u_raw[i]);
    for (int i = 0; i < kInputDim; ++i) append_num(row, s.u[i]);
    for (int i = 0; i < 3; ++i) append_num(row, s.vel_lh[i]);
    for (int i = 0; i < 3; ++i) append_num(row, s.pos_lh[i]);
    for (int i = 0; i < 3; ++i) append_num(row, s.ref_pos[i]);
    for (int i = 0; i < 3; ++i) append_num(row, s.error[i]);
    row += '\n';
    os << row;
  }
}

void write_gnuplot(std::ostream& os, const std::string& csv_name, bool bounded,
                   const ControlLimits& limits) {
  const double r2d = 180.0 / kPi;
  os << "# gnuplot script; renders the run CSV next to it\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set terminal pngcairo size 1400,1000\n"
     << "set output 'run.png'\n"
     << "set multiplot layout 2,2\n"
     << "set grid\n"
     << "\n"
     << "set title 'Ground track (ft)'\n"
     << "set xlabel 'E'; set ylabel 'N'\n"
     << "plot '" << csv_name << "' using 'E':'N' with lines title 'flown', \\\n"
     << "     '' using 'Eref':'Nref' with lines dashtype 2 title 'reference'\n"
     << "\n"
     << "set title 'Altitude (ft)'\n"
     << "set xlabel 't (s)'; set ylabel 'A'\n"
     << "plot '" << csv_name << "' using 't':'A' with lines title 'flown', \\\n"
     << "     '' using 't':'Aref' with lines dashtype 2 title 'reference'\n"
     << "\n"
     << "set title 'Local-horizon velocity (ft/s)'\n"
     << "set xlabel 't (s)'; set ylabel ''\n"
     << "plot '" << csv_name << "' using 't':'Vx' with lines, \\\n"
     << "     '' using 't':'Vy' with lines, \\\n"
     << "     '' using 't':'Vz' with lines\n"
     << "\n"
     << "set title 'Control deflections (deg)" << (bounded ? ", dashed = limits" : "") << "'\n"
     << "set xlabel 't (s)'; set ylabel ''\n"
     << "plot '" << csv_name << "' using 't':(column('dlat')*" << r2d
     << ") with lines lt 1 title 'lat', \\\n"
     << "     '' using 't':(column('dlon')*" << r2d << ") with lines lt 2 title 'lon', \\\n"
     << "     '' using 't':(column('dped')*" << r2d << ") with lines lt 3 title 'ped', \\\n"
     << "     '' using 't':(column('dcol')*" << r2d << ") with lines lt 4 title 'col'";
  if (bounded) {
    for (int i = 0; i < kInputDim; ++i) {
      char lo[64], hi[64];
      std::snprintf(hi, sizeof(hi), "%.6g", limits.upper[i] * r2d);
      std::snprintf(lo, sizeof(lo), "%.6g", limits.lower[i] * r2d);
      os << ", \\\n     " << hi << " with lines lt " << (i + 1) << " dashtype 3 notitle"
         << ", \\\n     " << lo << " with lines lt " << (i + 1) << " dashtype 3 notitle";
    }
  }
  os << "\n\nunset multiplot\n";
}

}  // namespace heli

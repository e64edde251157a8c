#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <utility>

#include "heli/state_space.hpp"
#include "heli/types.hpp"

namespace heli {

// Cost weights for the tracking synthesis. Q and H act on the 17-state
// augmented vector, R on the 4 input channels. R must be diagonal with
// strictly positive entries; the per-channel bounded-control rule depends
// on it.
struct TrackingWeights {
  double eta = 0.0;    // tracking weight coupling position error to body velocity
  Eigen::MatrixXd Q;   // 17 x 17, symmetric PSD
  Eigen::MatrixXd R;   // 4 x 4, diagonal PD
  Eigen::MatrixXd H;   // optional terminal weight (empty = none), 17 x 17 symmetric PSD

  // Throws ConfigError on wrong dimensions, asymmetry, indefiniteness or a
  // non-diagonal / non-positive R.
  void validate() const;
};

// Parse a weights document: "eta" plus either "q_scale" (Q = q_scale * I) or a
// full "Q" matrix, same for "r_scale"/"R" and the optional "h_scale"/"H".
TrackingWeights load_weights(const nlohmann::json& doc);
TrackingWeights load_weights_file(const std::string& path);

// Tracking-augmented plant. The first three states are the position error
// (N, E, A); their only dynamics are the -eta entries on the u, v, w columns.
struct AugmentedModel {
  Eigen::MatrixXd A;  // 17 x 17
  Eigen::MatrixXd B;  // 17 x 4, first three rows zero
  TrackingWeights weights;
  StateSpaceModel base;
};

AugmentedModel augment(const StateSpaceModel& model, const TrackingWeights& weights);

// The synthesis model's error state evolves eta times faster than the
// physical position error, so a controller fed with measured ref - pos must
// carry eta folded into the first three gain columns. Returns F with the
// error block scaled; the state block is untouched. Throws ConfigError on a
// non-positive eta or fewer than three columns.
Eigen::MatrixXd deploy_tracking_gain(const Eigen::MatrixXd& F, double eta);

// Pack / unpack the augmented state {error, state}. split(compose(e, x)) is the
// identity, exactly.
AugmentedState compose(const Vec3& error, const RigidBodyState& state);
std::pair<Vec3, RigidBodyState> split(const AugmentedState& aug);

}  // namespace heli

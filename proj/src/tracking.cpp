#include "heli/tracking.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "heli/errors.hpp"

namespace heli {
namespace {

void check_symmetric_psd(const Eigen::MatrixXd& M, const char* name) {
  const double scale = std::max(1.0, M.lpNorm<Eigen::Infinity>());
  if ((M - M.transpose()).lpNorm<Eigen::Infinity>() > 1e-12 * scale)
    throw ConfigError(std::string(name) + " is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.eigenvalues().minCoeff() < -1e-10 * scale)
    throw ConfigError(std::string(name) + " is not positive semidefinite");
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& value, int rows, int cols,
                                 const char* name) {
  if (!value.is_array() || static_cast<int>(value.size()) != rows)
    throw ConfigError(std::string(name) + " must be a " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " array of arrays");
  Eigen::MatrixXd M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& row = value.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ConfigError(std::string(name) + " row " + std::to_string(i) + " must have " +
                        std::to_string(cols) + " entries");
    for (int j = 0; j < cols; ++j) {
      if (!row.at(j).is_number())
        throw ConfigError(std::string(name) + " entry is not a number");
      M(i, j) = row.at(j).get<double>();
    }
  }
  return M;
}

Eigen::MatrixXd weight_matrix(const nlohmann::json& doc, const char* scale_key,
                              const char* matrix_key, int dim) {
  const bool has_scale = doc.contains(scale_key);
  const bool has_matrix = doc.contains(matrix_key);
  if (has_scale && has_matrix)
    throw ConfigError(std::string("give either '") + scale_key + "' or '" + matrix_key +
                      "', not both");
  if (has_scale) {
    if (!doc.at(scale_key).is_number())
      throw ConfigError(std::string("'") + scale_key + "' is not a number");
    return doc.at(scale_key).get<double>() * Eigen::MatrixXd::Identity(dim, dim);
  }
  if (has_matrix) return matrix_from_json(doc.at(matrix_key), dim, dim, matrix_key);
  throw ConfigError(std::string("weights need '") + scale_key + "' or '" + matrix_key + "'");
}

}  // namespace

void TrackingWeights::validate() const {
  if (!std::isfinite(eta)) throw ConfigError("eta is not finite");
  if (Q.rows() != kAugDim || Q.cols() != kAugDim)
    throw ConfigError("Q must be " + std::to_string(kAugDim) + "x" + std::to_string(kAugDim));
  if (R.rows() != kInputDim || R.cols() != kInputDim)
    throw ConfigError("R must be " + std::to_string(kInputDim) + "x" + std::to_string(kInputDim));
  check_symmetric_psd(Q, "Q");
  for (int i = 0; i < kInputDim; ++i) {
    for (int j = 0; j < kInputDim; ++j) {
      if (i != j && R(i, j) != 0.0) throw ConfigError("R must be diagonal");
    }
    if (!(R(i, i) > 0.0)) throw ConfigError("R diagonal entries must be strictly positive");
  }
  if (H.size() != 0) {
    if (H.rows() != kAugDim || H.cols() != kAugDim)
      throw ConfigError("H must be " + std::to_string(kAugDim) + "x" + std::to_string(kAugDim));
    check_symmetric_psd(H, "H");
  }
}

TrackingWeights load_weights(const nlohmann::json& doc) {
  TrackingWeights w;
  if (!doc.contains("eta") || !doc.at("eta").is_number())
    throw ConfigError("weights need a numeric 'eta'");
  w.eta = doc.at("eta").get<double>();
  w.Q = weight_matrix(doc, "q_scale", "Q", kAugDim);
  w.R = weight_matrix(doc, "r_scale", "R", kInputDim);
  if (doc.contains("h_scale") || doc.contains("H"))
    w.H = weight_matrix(doc, "h_scale", "H", kAugDim);
  w.validate();
  return w;
}

TrackingWeights load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("weights file not found: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("weights file " + path + " failed to parse: " + e.what());
  }
  return load_weights(doc);
}

AugmentedModel augment(const StateSpaceModel& model, const TrackingWeights& weights) {
  if (model.A.rows() != kStateDim || model.A.cols() != kStateDim ||
      model.B.rows() != kStateDim || model.B.cols() != kInputDim)
    throw std::invalid_argument("augment: model is not 14-state / 4-input");
  weights.validate();

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(kAugDim, kAugDim);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(kAugDim, kInputDim);

  // Error derivatives couple to the body velocities only: the -eta entries
  // land on the u, v, w columns of the state block.
  A(0, kErrorDim + st::u) = -weights.eta;
  A(1, kErrorDim + st::v) = -weights.eta;
  A(2, kErrorDim + st::w) = -weights.eta;
  A.bottomRightCorner(kStateDim, kStateDim) = model.A;
  B.bottomRows(kStateDim) = model.B;

  return {std::move(A), std::move(B), weights, model};
}

Eigen::MatrixXd deploy_tracking_gain(const Eigen::MatrixXd& F, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw ConfigError("deploy_tracking_gain: eta must be positive and finite");
  if (F.cols() < kErrorDim)
    throw ConfigError("deploy_tracking_gain: gain needs at least " +
                      std::to_string(kErrorDim) + " columns");
  Eigen::MatrixXd deployed = F;
  deployed.leftCols(kErrorDim) *= eta;
  return deployed;
}

AugmentedState compose(const Vec3& error, const RigidBodyState& state) {
  AugmentedState aug;
  aug.head<kErrorDim>() = error;
  aug.tail<kStateDim>() = state;
  return aug;
}

std::pair<Vec3, RigidBodyState> split(const AugmentedState& aug) {
  return {aug.head<kErrorDim>(), aug.tail<kStateDim>()};
}

}  // namespace heli

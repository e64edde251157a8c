#include "heli/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "heli/errors.hpp"

namespace heli {
namespace {

void check_dims(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                const Eigen::MatrixXd& R) {
  const auto n = A.rows();
  const auto m = B.cols();
  if (A.cols() != n) throw std::invalid_argument("riccati: A must be square");
  if (B.rows() != n) throw std::invalid_argument("riccati: B row count must match A");
  if (Q.rows() != n || Q.cols() != n) throw std::invalid_argument("riccati: Q must match A");
  if (R.rows() != m || R.cols() != m) throw std::invalid_argument("riccati: R must be m x m");
}

// Evaluates Q + K A + (K A)^T - K S K^T with S = B R^-1 B^T precomputed and
// scratch space reused across calls; symmetrizes the result.
class RiccatiOperator {
 public:
  RiccatiOperator(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                  const Eigen::MatrixXd& R)
      : A_(A), Q_(Q) {
    check_dims(A, B, Q, R);
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (R + R.transpose()));
    if (llt.info() != Eigen::Success)
      throw NumericalError("riccati: R is singular or not positive definite");
    S_.noalias() = B * llt.solve(B.transpose());
    const auto n = A.rows();
    ka_.resize(n, n);
    ks_.resize(n, n);
    sym_.resize(n, n);
  }

  void eval(const Eigen::MatrixXd& K, Eigen::MatrixXd& out) {
    ka_.noalias() = K * A_;
    ks_.noalias() = K * S_;
    out = Q_;
    out += ka_;
    out += ka_.transpose();
    out.noalias() -= ks_ * K.transpose();
    sym_ = 0.5 * (out + out.transpose());
    out.swap(sym_);
  }

 private:
  Eigen::MatrixXd A_, Q_, S_;
  Eigen::MatrixXd ka_, ks_, sym_;
};

// One classical 4th-order step of dK/dtau = rhs(K) in time-to-go tau,
// symmetrized afterwards. k1 must hold rhs(K) on entry.
void rk4_matrix_step(RiccatiOperator& op, Eigen::MatrixXd& K, double h,
                     const Eigen::MatrixXd& k1, Eigen::MatrixXd& k2, Eigen::MatrixXd& k3,
                     Eigen::MatrixXd& k4, Eigen::MatrixXd& scratch) {
  scratch = K + (0.5 * h) * k1;
  op.eval(scratch, k2);
  scratch = K + (0.5 * h) * k2;
  op.eval(scratch, k3);
  scratch = K + h * k3;
  op.eval(scratch, k4);
  K += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  scratch = 0.5 * (K + K.transpose());
  K.swap(scratch);
}

void check_finite(const Eigen::MatrixXd& K, double guard, long step, const char* what) {
  if (!K.allFinite() || K.lpNorm<Eigen::Infinity>() > guard)
    throw NumericalError(std::string(what) + " diverged at step " + std::to_string(step) +
                         "; reduce the integration step");
}

}  // namespace

void RiccatiConfig::validate() const {
  if (!(step > 0.0)) throw std::invalid_argument("riccati: step must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("riccati: tol must be positive");
  if (max_steps < 1) throw std::invalid_argument("riccati: max_steps must be >= 1");
}

Eigen::MatrixXd riccati_rhs(const Eigen::MatrixXd& K, const Eigen::MatrixXd& A,
                            const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                            const Eigen::MatrixXd& R) {
  if (K.rows() != A.rows() || K.cols() != A.rows())
    throw std::invalid_argument("riccati_rhs: K must match A");
  RiccatiOperator op(A, B, Q, R);
  Eigen::MatrixXd out;
  op.eval(K, out);
  return out;
}

double care_residual(const Eigen::MatrixXd& K, const Eigen::MatrixXd& A,
                     const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                     const Eigen::MatrixXd& R) {
  return riccati_rhs(K, A, B, Q, R).lpNorm<Eigen::Infinity>();
}

FiniteHorizonSolution solve_finite_horizon(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                           const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                                           const Eigen::MatrixXd& H, double horizon,
                                           const RiccatiConfig& cfg) {
  cfg.validate();
  if (!(horizon > 0.0)) throw std::invalid_argument("solve_finite_horizon: horizon must be > 0");
  if (H.rows() != A.rows() || H.cols() != A.rows())
    throw std::invalid_argument("solve_finite_horizon: H must match A");
  if ((H - H.transpose()).lpNorm<Eigen::Infinity>() >
      1e-12 * std::max(1.0, H.lpNorm<Eigen::Infinity>()))
    throw std::invalid_argument("solve_finite_horizon: H must be symmetric");

  RiccatiOperator op(A, B, Q, R);
  const long n_steps = std::max<long>(1, std::llround(horizon / cfg.step));
  const double h = horizon / static_cast<double>(n_steps);

  FiniteHorizonSolution sol;
  sol.times.resize(n_steps + 1);
  sol.K.resize(n_steps + 1);
  for (long i = 0; i <= n_steps; ++i) sol.times[i] = static_cast<double>(i) * h;

  Eigen::MatrixXd K = 0.5 * (H + H.transpose());
  Eigen::MatrixXd k1, k2, k3, k4, scratch;
  sol.K[n_steps] = K;
  // march in time-to-go, filling the trajectory from the terminal end back
  for (long j = n_steps; j > 0; --j) {
    op.eval(K, k1);
    rk4_matrix_step(op, K, h, k1, k2, k3, k4, scratch);
    check_finite(K, cfg.overflow_guard, n_steps - j + 1, "finite-horizon riccati integration");
    sol.K[j - 1] = K;
  }
  return sol;
}

CareSolution solve_care(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                        const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                        const RiccatiConfig& cfg) {
  cfg.validate();
  RiccatiOperator op(A, B, Q, R);

  Eigen::MatrixXd K = 0.5 * (Q + Q.transpose());  // starting guess: the state weight
  Eigen::MatrixXd k1, k2, k3, k4, scratch;
  op.eval(K, k1);

  // steady state once max|dK/dt| drops below tol relative to the size of K,
  // so the same tol means the same gain accuracy at any joint (Q, R) scale
  const auto settled = [&] {
    return k1.lpNorm<Eigen::Infinity>() < cfg.tol * (1.0 + K.lpNorm<Eigen::Infinity>());
  };

  long step = 0;
  bool converged = settled();
  while (!converged && step < cfg.max_steps) {
    rk4_matrix_step(op, K, cfg.step, k1, k2, k3, k4, scratch);
    ++step;
    check_finite(K, cfg.overflow_guard, step, "riccati integration");
    op.eval(K, k1);
    converged = settled();
  }
  if (!converged)
    throw NumericalError("riccati iteration did not reach steady state within " +
                         std::to_string(cfg.max_steps) + " steps (max|dK/dt| = " +
                         std::to_string(k1.lpNorm<Eigen::Infinity>()) + ")");

  CareSolution sol;
  sol.K = K;
  sol.F = feedback_gain(K, B, R);
  sol.residual_norm = care_residual(K, A, B, Q, R);
  sol.steps = step;

  Eigen::MatrixXd closed_loop = A - B * sol.F;
  Eigen::EigenSolver<Eigen::MatrixXd> es(closed_loop);
  if (es.info() != Eigen::Success)
    throw NumericalError("closed-loop eigenvalue computation failed");
  sol.closed_loop_spectrum.assign(es.eigenvalues().data(),
                                  es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(sol.closed_loop_spectrum.begin(), sol.closed_loop_spectrum.end(),
            [](const auto& a, const auto& b) {
              return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
            });

  double abscissa = -std::numeric_limits<double>::infinity();
  for (const auto& ev : sol.closed_loop_spectrum) abscissa = std::max(abscissa, ev.real());
  if (!(abscissa < 0.0))
    throw NumericalError("closed loop is not stable (spectral abscissa " +
                         std::to_string(abscissa) + "); the pair (A, B) is not stabilizable "
                         "for these weights");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sa(sol.K);
  if (sa.eigenvalues().minCoeff() < -1e-10)
    throw NumericalError("riccati solution is not positive semidefinite (min eigenvalue " +
                         std::to_string(sa.eigenvalues().minCoeff()) + ")");
  return sol;
}

RiccatiConfig stable_synthesis_config(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                      const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                                      RiccatiConfig base) {
  base.validate();
  check_dims(A, B, Q, R);
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (R + R.transpose()));
  if (llt.info() != Eigen::Success)
    throw NumericalError("riccati: R is singular or not positive definite");

  // The flow linearized at the start K = Q is d(dK)/dtau = dK M + M^T dK with
  // M = A - S Q, so its rates are pair sums of eig(M); the most negative is
  // twice the abscissa magnitude. Keep h * rate below 2.0, inside the 2.785
  // stability interval of the classical 4th-order method on the real axis.
  Eigen::MatrixXd s(B.rows(), B.rows());
  s.noalias() = B * llt.solve(B.transpose());
  const Eigen::MatrixXd m = A - s * (0.5 * (Q + Q.transpose()));
  const Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw NumericalError("riccati: start-point eigenvalue computation failed");
  double rate = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    rate = std::max(rate, 2.0 * std::abs(es.eigenvalues()[i].real()));
  if (std::isfinite(rate) && rate > 0.0) base.step = std::min(base.step, 2.0 / rate);
  return base;
}

Eigen::MatrixXd feedback_gain(const Eigen::MatrixXd& K, const Eigen::MatrixXd& B,
                              const Eigen::MatrixXd& R) {
  if (B.rows() != K.rows()) throw std::invalid_argument("feedback_gain: B must match K");
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (R + R.transpose()));
  if (llt.info() != Eigen::Success)
    throw NumericalError("feedback_gain: R is singular or not positive definite");
  return llt.solve(B.transpose() * K);
}

nlohmann::json gain_dump(const CareSolution& sol) {
  nlohmann::json j;
  std::vector<double> k_flat(sol.K.size()), f_flat(sol.F.size());
  for (Eigen::Index i = 0; i < sol.K.rows(); ++i)
    for (Eigen::Index c = 0; c < sol.K.cols(); ++c) k_flat[i * sol.K.cols() + c] = sol.K(i, c);
  for (Eigen::Index i = 0; i < sol.F.rows(); ++i)
    for (Eigen::Index c = 0; c < sol.F.cols(); ++c) f_flat[i * sol.F.cols() + c] = sol.F(i, c);
  j["K"] = k_flat;
  j["F"] = f_flat;
  j["residual"] = sol.residual_norm;
  auto spectrum = nlohmann::json::array();
  for (const auto& ev : sol.closed_loop_spectrum)
    spectrum.push_back(nlohmann::json::array({ev.real(), ev.imag()}));
  j["spectrum"] = spectrum;
  return j;
}

CareSolution gain_load(const nlohmann::json& doc) {
  for (const char* key : {"K", "F", "residual", "spectrum"}) {
    if (!doc.contains(key))
      throw ConfigError(std::string("gain document is missing '") + key + "'");
  }
  const auto k_flat = doc.at("K").get<std::vector<double>>();
  const auto f_flat = doc.at("F").get<std::vector<double>>();
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(k_flat.size()))));
  if (n * n != static_cast<Eigen::Index>(k_flat.size()))
    throw ConfigError("gain document: K is not square");
  if (n == 0 || f_flat.size() % n != 0)
    throw ConfigError("gain document: F size does not match K");
  const auto m = static_cast<Eigen::Index>(f_flat.size()) / n;

  CareSolution sol;
  sol.K.resize(n, n);
  sol.F.resize(m, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index c = 0; c < n; ++c) sol.K(i, c) = k_flat[i * n + c];
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index c = 0; c < n; ++c) sol.F(i, c) = f_flat[i * n + c];
  sol.residual_norm = doc.at("residual").get<double>();
  for (const auto& pair : doc.at("spectrum"))
    sol.closed_loop_spectrum.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  return sol;
}

}  // namespace heli

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <json.hpp>
#include <vector>

namespace heli {

// Settings for the backward matrix Riccati integration.
struct RiccatiConfig {
  double step = 1e-3;            // integration step, s; well under the fastest rotor mode
  double tol = 1e-9;             // steady state when max|dK/dt| < tol * (1 + max|K|)
  long max_steps = 10'000'000;   // iteration cap
  double overflow_guard = 1e12;  // max|K| beyond which the integration is declared divergent

  void validate() const;
};

// Steady-state solution of the Riccati equation together with the state
// feedback gain and closed-loop diagnostics.
struct CareSolution {
  Eigen::MatrixXd K;  // n x n, symmetric PSD cost kernel; costate map p = K x
  Eigen::MatrixXd F;  // m x n gain, F = R^-1 B^T K; control law u = -F x
  double residual_norm = 0.0;  // max-abs residual of the algebraic equation at K
  std::vector<std::complex<double>> closed_loop_spectrum;  // eig(A - B F), sorted
  long steps = 0;  // backward steps taken to reach steady state
};

// Right-hand side of the backward Riccati differential equation,
// Q + K A + A^T K^T - K B R^-1 B^T K^T (equal to -dK/dt). The result is
// symmetrized; it is exactly symmetric for symmetric K. Throws NumericalError
// when R is not positive definite.
Eigen::MatrixXd riccati_rhs(const Eigen::MatrixXd& K, const Eigen::MatrixXd& A,
                            const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                            const Eigen::MatrixXd& R);

// Max-abs norm of the algebraic Riccati residual at K; zero at the exact root.
double care_residual(const Eigen::MatrixXd& K, const Eigen::MatrixXd& A,
                     const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                     const Eigen::MatrixXd& R);

// K(t) trajectory on a uniform grid, stored in forward-time order:
// times[i] = i * h with times[0] = 0 (initial time) and times.back() = horizon.
struct FiniteHorizonSolution {
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> K;
};

// Integrate the matrix Riccati equation backward from K(horizon) = H with a
// classical 4th-order one-step method, symmetrizing after every step.
FiniteHorizonSolution solve_finite_horizon(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                           const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                                           const Eigen::MatrixXd& H, double horizon,
                                           const RiccatiConfig& cfg = {});

// Integrate backward from K = Q until max|dK/dt| < cfg.tol, then form the gain
// and the closed-loop spectrum. Throws NumericalError on non-convergence,
// divergence, or an unstable closed loop (non-stabilizable setup).
CareSolution solve_care(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                        const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                        const RiccatiConfig& cfg = {});

// base with the step capped so the one-step method stays inside its absolute
// stability region on the initial transient from K = Q. The local rate there
// is set by the spectral abscissa magnitude of A - B R^-1 B^T Q, which for
// heavy control authority (large ||B||^2 / R) far exceeds the plant's own
// fastest mode. Use this to configure solve_care for a concrete synthesis.
RiccatiConfig stable_synthesis_config(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                      const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                                      RiccatiConfig base = {});

// F = R^-1 B^T K. Throws NumericalError when R is not positive definite.
Eigen::MatrixXd feedback_gain(const Eigen::MatrixXd& K, const Eigen::MatrixXd& B,
                              const Eigen::MatrixXd& R);

// Wire format for stored gains: {"K": row-major, "F": row-major,
// "residual": scalar, "spectrum": [[re, im], ...]}.
nlohmann::json gain_dump(const CareSolution& sol);
CareSolution gain_load(const nlohmann::json& doc);

}  // namespace heli

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "heli/errors.hpp"
#include "heli/riccati.hpp"

using namespace heli;

namespace {

// random system with spectral abscissa <= -1, so a 20 s horizon settles
Eigen::MatrixXd random_stable(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = dist(rng);
  const double abscissa = Eigen::EigenSolver<Eigen::MatrixXd>(M).eigenvalues().real().maxCoeff();
  return M - (abscissa + 1.0) * Eigen::MatrixXd::Identity(n, n);
}

Eigen::MatrixXd random_matrix(int rows, int cols, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = dist(rng);
  return M;
}

}  // namespace

TEST_CASE("scalar steady-state solution is the quadratic root 1 + sqrt(2)") {
  const Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);
  const CareSolution sol = solve_care(one, one, one, one);
  CHECK(sol.K(0, 0) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-6));
  CHECK(sol.F(0, 0) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-6));
  CHECK(sol.residual_norm < 1e-8);
  REQUIRE(sol.closed_loop_spectrum.size() == 1);
  CHECK(sol.closed_loop_spectrum[0].real() == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-6));
  CHECK(sol.steps > 0);
}

TEST_CASE("stable uncontrollable scalar settles the Lyapunov limit q / 2|a|") {
  Eigen::MatrixXd A(1, 1), B(1, 1), Q(1, 1), R(1, 1);
  A << -1.0;
  B << 0.0;
  Q << 1.0;
  R << 1.0;
  const CareSolution sol = solve_care(A, B, Q, R);
  CHECK(sol.K(0, 0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(sol.F(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("derivative expression matches the written-out quadratic form") {
  std::mt19937 rng(42);
  const Eigen::MatrixXd A = random_matrix(3, 3, rng);
  const Eigen::MatrixXd B = random_matrix(3, 2, rng);
  Eigen::MatrixXd K = random_matrix(3, 3, rng);
  K = (0.5 * (K + K.transpose())).eval();
  const Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd R(2, 2);
  R << 2.0, 0.0, 0.0, 0.5;

  const Eigen::MatrixXd expected =
      Q + K * A + A.transpose() * K - K * B * R.inverse() * B.transpose() * K;
  const Eigen::MatrixXd got = riccati_rhs(K, A, B, Q, R);
  CHECK((got - expected).lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK((got - got.transpose()).lpNorm<Eigen::Infinity>() == 0.0);

  // residual vanishes at the root found by the integrator
  const CareSolution sol = solve_care(A, B, Q, R);
  CHECK(care_residual(sol.K, A, B, Q, R) < 1e-8);
}

TEST_CASE("finite-horizon sweep from H = 0 reaches the algebraic root") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    const Eigen::MatrixXd A = random_stable(3, rng);
    const Eigen::MatrixXd B = random_matrix(3, 2, rng);
    const Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(3, 3);
    const Eigen::MatrixXd R = Eigen::MatrixXd::Identity(2, 2);
    const Eigen::MatrixXd H = Eigen::MatrixXd::Zero(3, 3);

    const FiniteHorizonSolution fh = solve_finite_horizon(A, B, Q, R, H, 20.0);
    const CareSolution care = solve_care(A, B, Q, R);

    REQUIRE(fh.times.size() == fh.K.size());
    CHECK(fh.times.front() == 0.0);
    CHECK(fh.times.back() == doctest::Approx(20.0));
    CHECK(fh.K.back() == H);
    CHECK((fh.K.front() - care.K).lpNorm<Eigen::Infinity>() < 1e-6);
  }
}

TEST_CASE("starting the sweep at the algebraic root stays there") {
  std::mt19937 rng(11);
  const Eigen::MatrixXd A = random_stable(3, rng);
  const Eigen::MatrixXd B = random_matrix(3, 1, rng);
  const Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(3, 3);
  const Eigen::MatrixXd R = Eigen::MatrixXd::Identity(1, 1);

  const CareSolution care = solve_care(A, B, Q, R);
  const FiniteHorizonSolution fh = solve_finite_horizon(A, B, Q, R, care.K, 5.0);
  for (const auto& K : fh.K)
    CHECK((K - care.K).lpNorm<Eigen::Infinity>() < 1e-7);
}

TEST_CASE("gain and spectrum diagnostics") {
  std::mt19937 rng(3);
  const Eigen::MatrixXd A = random_stable(4, rng);
  const Eigen::MatrixXd B = random_matrix(4, 2, rng);
  const Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(4, 4);
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(2, 2);
  const CareSolution sol = solve_care(A, B, Q, R);

  // F is R^-1 B^T K
  CHECK((sol.F - R.inverse() * B.transpose() * sol.K).lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK((sol.F - feedback_gain(sol.K, B, R)).lpNorm<Eigen::Infinity>() == 0.0);

  // symmetric PSD kernel, stable closed loop, sorted spectrum
  CHECK((sol.K - sol.K.transpose()).lpNorm<Eigen::Infinity>() < 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sol.K);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  REQUIRE(sol.closed_loop_spectrum.size() == 4);
  for (std::size_t i = 0; i < sol.closed_loop_spectrum.size(); ++i) {
    CHECK(sol.closed_loop_spectrum[i].real() < 0.0);
    if (i > 0)
      CHECK(sol.closed_loop_spectrum[i - 1].real() <= sol.closed_loop_spectrum[i].real());
  }
}

TEST_CASE("joint weight scaling leaves the gain unchanged") {
  std::mt19937 rng(19);
  const Eigen::MatrixXd A = random_stable(3, rng);
  const Eigen::MatrixXd B = random_matrix(3, 2, rng);
  const Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(3, 3);
  const Eigen::MatrixXd R = Eigen::MatrixXd::Identity(2, 2);

  RiccatiConfig tight;
  tight.tol = 1e-12;
  const CareSolution base = solve_care(A, B, Q, R, tight);
  const CareSolution scaled = solve_care(A, B, 10.0 * Q, 10.0 * R, tight);

  CHECK((scaled.K - 10.0 * base.K).lpNorm<Eigen::Infinity>() <
        1e-8 * base.K.lpNorm<Eigen::Infinity>() * 10.0);
  CHECK((scaled.F - base.F).lpNorm<Eigen::Infinity>() <
        1e-8 * base.F.lpNorm<Eigen::Infinity>());
}

TEST_CASE("gain dump round-trips exactly through text") {
  std::mt19937 rng(5);
  const Eigen::MatrixXd A = random_stable(3, rng);
  const Eigen::MatrixXd B = random_matrix(3, 2, rng);
  const CareSolution sol =
      solve_care(A, B, Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Identity(2, 2));

  const nlohmann::json doc = gain_dump(sol);
  for (const char* key : {"K", "F", "residual", "spectrum"}) CHECK(doc.contains(key));
  CHECK(doc.size() == 4);

  const CareSolution back = gain_load(nlohmann::json::parse(doc.dump()));
  CHECK(back.K == sol.K);
  CHECK(back.F == sol.F);
  CHECK(back.residual_norm == sol.residual_norm);
  REQUIRE(back.closed_loop_spectrum.size() == sol.closed_loop_spectrum.size());
  CHECK(back.closed_loop_spectrum == sol.closed_loop_spectrum);

  nlohmann::json broken = doc;
  broken.erase("F");
  CHECK_THROWS_AS(gain_load(broken), ConfigError);
}

TEST_CASE("stable synthesis config tames control-heavy systems") {
  Eigen::MatrixXd a(1, 1), b(1, 1), q(1, 1), r(1, 1);
  a << 0.0;
  b << 100.0;
  q << 1.0;
  r << 1.0;

  // heavy control authority: the default step leaves the stability region
  CHECK_THROWS_AS(solve_care(a, b, q, r), NumericalError);

  // initial rate 2 |a - b^2/r q| = 2e4, so the step is capped at 2 / 2e4
  const RiccatiConfig cfg = stable_synthesis_config(a, b, q, r);
  CHECK(cfg.step == doctest::Approx(1e-4).epsilon(1e-12));
  const CareSolution sol = solve_care(a, b, q, r, cfg);
  CHECK(sol.K(0, 0) == doctest::Approx(0.01).epsilon(1e-6));  // sqrt(q r) / b
  CHECK(sol.F(0, 0) == doctest::Approx(1.0).epsilon(1e-6));

  // benign system: the requested step is kept as-is
  a << 1.0;
  b << 1.0;
  RiccatiConfig base;
  base.step = 5e-4;
  CHECK(stable_synthesis_config(a, b, q, r, base).step == 5e-4);

  CHECK_THROWS_AS(stable_synthesis_config(a, b, q, Eigen::MatrixXd::Zero(1, 1)),
                  NumericalError);
}

TEST_CASE("failure modes are reported as numerical errors") {
  const Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);

  // unstabilizable: open-loop growth with no control authority
  CHECK_THROWS_AS(solve_care(one, Eigen::MatrixXd::Zero(1, 1), one, one), NumericalError);

  // singular control weighting
  CHECK_THROWS_AS(solve_care(one, one, one, Eigen::MatrixXd::Zero(1, 1)), NumericalError);
  CHECK_THROWS_AS(feedback_gain(one, one, Eigen::MatrixXd::Zero(1, 1)), NumericalError);

  RiccatiConfig bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(solve_care(one, one, one, one, bad), std::invalid_argument);

  CHECK_THROWS_AS(solve_finite_horizon(one, one, one, one, one, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(
      solve_finite_horizon(one, one, one, one, Eigen::MatrixXd::Zero(2, 2), 1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(riccati_rhs(one, Eigen::MatrixXd::Ones(2, 2), one, one, one),
                  std::invalid_argument);
}

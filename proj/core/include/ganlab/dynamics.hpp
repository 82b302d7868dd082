#pragma once

#include <Eigen/Core>
#include <vector>

namespace ganlab {

/// Squared moment-matching W2 distance from N(0, K) to its best rank-r
/// Gaussian approximation: Tr(K) - sum of the top r eigenvalues. This is
/// the minimax value of the rank-r quadratic game.
double minimax_value(const Eigen::MatrixXd& K, int r);

/// Maximin value of the rank-1 quadratic game, evaluated over the analytic
/// branch: the inner infimum is -inf unless A >= I, where the generator
/// best-responds with zero mass and the value is Tr((I - A) K), maximized
/// at A = I. A grid over diagonal A and alpha * I sweeps (d <= 3) confirms
/// the branch analysis numerically.
double maximin_value_numeric(const Eigen::MatrixXd& K);

/// Generator-discriminator state of the direct rank-1 game: symmetric
/// discriminator matrix A and generator vector v (U = v v^T).
struct NaiveFlowState {
  Eigen::MatrixXd A;
  Eigen::VectorXd v;
  double t = 0.0;
};

/// State of the parameter-sharing game: A = lambda v v^T, U = b v v^T with
/// v on the unit sphere, b >= 0, lambda > 0.
struct SharedFlowState {
  Eigen::VectorXd v;
  double b = 0.0;
  double lambda = 1.0;
  double t = 0.0;
};

enum class FlowIntegrator { RK4, AlternatingEuler };

struct FlowOptions {
  double h = 1e-3;
  double t_end = 1.0;
  int record_stride = 1;              // record every k-th step (plus the last)
  FlowIntegrator integrator = FlowIntegrator::RK4;
  double h_discriminator = 0.0;       // AlternatingEuler only; 0 means h
};

struct NaiveTrajectory {
  std::vector<double> times;
  std::vector<NaiveFlowState> states;
  std::vector<double> objective;      // Tr((I-A)K) + v^T (I - A^{-1}) v
  double min_step_increment_a_last;   // smallest single-step change of A(d,d)
};

struct SharedTrajectory {
  std::vector<double> times;
  std::vector<SharedFlowState> states;
  std::vector<double> objective;      // Tr(K) - lambda v^T K v + b - b/lambda
  std::vector<double> lyapunov;
  double max_lyapunov_increase;       // largest single-step increase, all steps
};

/// Field of the direct game at a state (ascent in A, descent in v); the
/// matrix inverse degrades to a spectral pseudo-inverse near the boundary
/// (relative tolerance 1e-10).
void naive_flow_field(const NaiveFlowState& state, const Eigen::MatrixXd& K,
                      Eigen::MatrixXd& dA, Eigen::VectorXd& dv);

/// Fixed-step integration of the direct game. Throws StepBlowup when the
/// state norm passes 1e6 and SingularA when the field turns non-finite.
NaiveTrajectory naive_flow_run(const NaiveFlowState& start, const Eigen::MatrixXd& K,
                               const FlowOptions& opts);

/// Field of the parameter-sharing game with the sphere-tangent projection
/// applied to dv and one-sided derivative at b = 0.
void shared_flow_field(const SharedFlowState& state, const Eigen::MatrixXd& K,
                       Eigen::VectorXd& dv, double& db, double& dlambda);

/// Fixed-step integration of the parameter-sharing game; v is renormalized
/// and b, lambda clamped to their half-lines after each step. Requires
/// v(0) not orthogonal to the top eigenvector (BadInit otherwise).
SharedTrajectory shared_flow_run(const SharedFlowState& start, const Eigen::MatrixXd& K,
                                 const FlowOptions& opts);

/// The descent certificate of the parameter-sharing flow:
///   (1/8 + l1^2) ln(1/|v^T v1|) + (1/2)(b - l1)^2 + (1/2)(lambda - 1)^2
///   + (1/8)(1/lambda - 1)^2 + (1/8)(b/lambda^2 - v^T K v)^2
/// with l1, v1 the top eigenpair of K.
double lyapunov_value(const SharedFlowState& state, const Eigen::MatrixXd& K);

/// Objective of the parameter-sharing game at a state.
double shared_objective(const SharedFlowState& state, const Eigen::MatrixXd& K);

/// Objective of the direct game at a state.
double naive_objective(const NaiveFlowState& state, const Eigen::MatrixXd& K);

}  // namespace ganlab

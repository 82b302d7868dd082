#include "ganlab/dynamics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "ganlab/error.hpp"
#include "ganlab/gaussian.hpp"

namespace ganlab {

double minimax_value(const Eigen::MatrixXd& K, int r) {
  const int d = static_cast<int>(K.rows());
  if (r < 1 || r > d) {
    throw Error(ErrorCode::RankOutOfRange, "rank outside [1, d]");
  }
  SpectralDecomp dec = spectral(K);
  double top = 0.0;
  for (int i = 0; i < r; ++i) top += dec.values(i);
  return K.trace() - top;
}

double maximin_value_numeric(const Eigen::MatrixXd& K) {
  const int d = static_cast<int>(K.rows());
  if (d > 3) throw Error(ErrorCode::BadValue, "maximin grid limited to d <= 3");

  // Branch analysis: the inner infimum over (b, v) is -inf unless A >= I
  // (otherwise b -> inf along a direction with v^T (I - A^{-1}) v < 0), and
  // equals 0 at b = 0 when A >= I. So the outer sup reduces to
  // sup_{A >= I} Tr((I - A) K), confirmed here over diagonal grids.
  auto branch_value = [&](const Eigen::MatrixXd& A) -> double {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.eigenvalues().minCoeff() < 1.0 - 1e-12) {
      return -std::numeric_limits<double>::infinity();
    }
    return ((Eigen::MatrixXd::Identity(d, d) - A) * K).trace();
  };

  double best = -std::numeric_limits<double>::infinity();
  const std::vector<double> levels{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0};
  for (double alpha : levels) {
    best = std::max(best, branch_value(alpha * Eigen::MatrixXd::Identity(d, d)));
  }
  std::vector<int> idx(d, 0);
  for (;;) {
    Eigen::VectorXd diag(d);
    for (int j = 0; j < d; ++j) diag(j) = levels[idx[j]];
    best = std::max(best, branch_value(diag.asDiagonal()));
    int j = 0;
    while (j < d && ++idx[j] == static_cast<int>(levels.size())) idx[j++] = 0;
    if (j == d) break;
  }
  return best;
}

namespace {

// Spectral pseudo-inverse; eigenvalues below 1e-10 of the largest magnitude
// are treated as the boundary and zeroed.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (A + A.transpose()));
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularA, "eigendecomposition of A failed");
  }
  Eigen::VectorXd vals = es.eigenvalues();
  double scale = vals.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(vals.size());
  for (int i = 0; i < vals.size(); ++i) {
    if (std::abs(vals(i)) > 1e-10 * scale) inv(i) = 1.0 / vals(i);
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

void check_finite(const Eigen::MatrixXd& A, const Eigen::VectorXd& v) {
  if (!A.allFinite() || !v.allFinite()) {
    throw Error(ErrorCode::SingularA, "flow field is not finite");
  }
  double norm = std::max(A.cwiseAbs().maxCoeff(), v.cwiseAbs().maxCoeff());
  if (norm > 1e6) {
    throw Error(ErrorCode::StepBlowup, "state norm exceeded 1e6");
  }
}

}  // namespace

void naive_flow_field(const NaiveFlowState& state, const Eigen::MatrixXd& K,
                      Eigen::MatrixXd& dA, Eigen::VectorXd& dv) {
  Eigen::MatrixXd ainv = pseudo_inverse(state.A);
  Eigen::VectorXd w = ainv * state.v;
  dA = -K + w * w.transpose();
  dA = 0.5 * (dA + dA.transpose()).eval();
  dv = 2.0 * (w - state.v);
}

double naive_objective(const NaiveFlowState& state, const Eigen::MatrixXd& K) {
  const int d = static_cast<int>(K.rows());
  Eigen::MatrixXd ainv = pseudo_inverse(state.A);
  return ((Eigen::MatrixXd::Identity(d, d) - state.A) * K).trace() +
         state.v.dot((Eigen::MatrixXd::Identity(d, d) - ainv) * state.v);
}

NaiveTrajectory naive_flow_run(const NaiveFlowState& start, const Eigen::MatrixXd& K,
                               const FlowOptions& opts) {
  const int d = static_cast<int>(K.rows());
  if (start.A.rows() != d || start.v.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "state/K dimension mismatch");
  }
  const double h = opts.h;
  const int steps = static_cast<int>(std::llround(opts.t_end / h));
  const double h_disc =
      opts.h_discriminator > 0 ? opts.h_discriminator : h;

  NaiveTrajectory traj;
  traj.min_step_increment_a_last = std::numeric_limits<double>::infinity();
  NaiveFlowState s = start;
  s.A = 0.5 * (start.A + start.A.transpose());

  Eigen::MatrixXd kA1, kA2, kA3, kA4;
  Eigen::VectorXd kv1, kv2, kv3, kv4;
  NaiveFlowState stage;

  auto record = [&](const NaiveFlowState& st) {
    traj.times.push_back(st.t);
    traj.states.push_back(st);
    traj.objective.push_back(naive_objective(st, K));
  };
  record(s);

  for (int step = 0; step < steps; ++step) {
    double prev_last = s.A(d - 1, d - 1);
    if (opts.integrator == FlowIntegrator::RK4) {
      naive_flow_field(s, K, kA1, kv1);
      stage.A = s.A + 0.5 * h * kA1;
      stage.v = s.v + 0.5 * h * kv1;
      naive_flow_field(stage, K, kA2, kv2);
      stage.A = s.A + 0.5 * h * kA2;
      stage.v = s.v + 0.5 * h * kv2;
      naive_flow_field(stage, K, kA3, kv3);
      stage.A = s.A + h * kA3;
      stage.v = s.v + h * kv3;
      naive_flow_field(stage, K, kA4, kv4);
      s.A += (h / 6.0) * (kA1 + 2.0 * kA2 + 2.0 * kA3 + kA4);
      s.v += (h / 6.0) * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
    } else {
      // Alternating Euler: discriminator ascends first, generator follows
      // against the updated discriminator.
      naive_flow_field(s, K, kA1, kv1);
      s.A += h_disc * kA1;
      naive_flow_field(s, K, kA2, kv2);
      s.v += h * kv2;
    }
    s.t = start.t + (step + 1) * h;
    check_finite(s.A, s.v);
    traj.min_step_increment_a_last =
        std::min(traj.min_step_increment_a_last, s.A(d - 1, d - 1) - prev_last);
    if ((step + 1) % opts.record_stride == 0 || step + 1 == steps) record(s);
  }
  return traj;
}

void shared_flow_field(const SharedFlowState& state, const Eigen::MatrixXd& K,
                       Eigen::VectorXd& dv, double& db, double& dlambda) {
  const double lambda = std::max(state.lambda, 1e-8);
  Eigen::VectorXd kv = K * state.v;
  double vkv = state.v.dot(kv);
  dv = 2.0 * lambda * (kv - vkv * state.v);  // sphere-tangent component
  db = 1.0 / lambda - 1.0;
  if (state.b <= 0.0) db = std::max(db, 0.0);
  dlambda = -vkv + state.b / (lambda * lambda);
}

double shared_objective(const SharedFlowState& state, const Eigen::MatrixXd& K) {
  const double lambda = std::max(state.lambda, 1e-8);
  return K.trace() - lambda * state.v.dot(K * state.v) + state.b - state.b / lambda;
}

double lyapunov_value(const SharedFlowState& state, const Eigen::MatrixXd& K) {
  SpectralDecomp dec = spectral(K);
  double l1 = dec.values(0);
  Eigen::VectorXd v1 = dec.vectors.col(0);
  double overlap = std::abs(state.v.dot(v1));
  if (overlap < 1e-300) {
    throw Error(ErrorCode::OrthogonalV, "v is orthogonal to the top eigenvector");
  }
  double lambda = std::max(state.lambda, 1e-8);
  double vkv = state.v.dot(K * state.v);
  double term_log = (0.125 + l1 * l1) * std::log(1.0 / overlap);
  double term_b = 0.5 * (state.b - l1) * (state.b - l1);
  double term_lambda = 0.5 * (lambda - 1.0) * (lambda - 1.0);
  double term_inv = 0.125 * (1.0 / lambda - 1.0) * (1.0 / lambda - 1.0);
  double gap = state.b / (lambda * lambda) - vkv;
  double term_gap = 0.125 * gap * gap;
  return term_log + term_b + term_lambda + term_inv + term_gap;
}

SharedTrajectory shared_flow_run(const SharedFlowState& start, const Eigen::MatrixXd& K,
                                 const FlowOptions& opts) {
  const int d = static_cast<int>(K.rows());
  if (start.v.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "state/K dimension mismatch");
  }
  if (start.b < 0 || start.lambda <= 0) {
    throw Error(ErrorCode::InvalidSpec, "need b >= 0 and lambda > 0");
  }
  SpectralDecomp dec = spectral(K);
  const double l1 = dec.values(0);
  const Eigen::VectorXd v1 = dec.vectors.col(0);
  if (std::abs(start.v.normalized().dot(v1)) < 1e-12) {
    throw Error(ErrorCode::BadInit, "v(0) orthogonal to the top eigenvector");
  }

  auto lyap = [&](const SharedFlowState& st) {
    double overlap = std::abs(st.v.dot(v1));
    if (overlap < 1e-300) {
      throw Error(ErrorCode::OrthogonalV, "v became orthogonal to the top eigenvector");
    }
    double lambda = std::max(st.lambda, 1e-8);
    double vkv = st.v.dot(K * st.v);
    double gap = st.b / (lambda * lambda) - vkv;
    return (0.125 + l1 * l1) * std::log(1.0 / overlap) +
           0.5 * (st.b - l1) * (st.b - l1) + 0.5 * (lambda - 1.0) * (lambda - 1.0) +
           0.125 * (1.0 / lambda - 1.0) * (1.0 / lambda - 1.0) + 0.125 * gap * gap;
  };

  const double h = opts.h;
  const int steps = static_cast<int>(std::llround(opts.t_end / h));
  SharedFlowState s = start;
  s.v.normalize();

  SharedTrajectory traj;
  traj.max_lyapunov_increase = -std::numeric_limits<double>::infinity();

  auto record = [&](const SharedFlowState& st, double lv) {
    traj.times.push_back(st.t);
    traj.states.push_back(st);
    traj.objective.push_back(shared_objective(st, K));
    traj.lyapunov.push_back(lv);
  };
  double prev_l = lyap(s);
  record(s, prev_l);

  Eigen::VectorXd kv1, kv2, kv3, kv4;
  double kb1, kb2, kb3, kb4, kl1, kl2, kl3, kl4;
  SharedFlowState stage;
  const double h_disc = opts.h_discriminator > 0 ? opts.h_discriminator : h;

  for (int step = 0; step < steps; ++step) {
    if (opts.integrator == FlowIntegrator::RK4) {
      shared_flow_field(s, K, kv1, kb1, kl1);
      stage.v = s.v + 0.5 * h * kv1;
      stage.b = s.b + 0.5 * h * kb1;
      stage.lambda = s.lambda + 0.5 * h * kl1;
      shared_flow_field(stage, K, kv2, kb2, kl2);
      stage.v = s.v + 0.5 * h * kv2;
      stage.b = s.b + 0.5 * h * kb2;
      stage.lambda = s.lambda + 0.5 * h * kl2;
      shared_flow_field(stage, K, kv3, kb3, kl3);
      stage.v = s.v + h * kv3;
      stage.b = s.b + h * kb3;
      stage.lambda = s.lambda + h * kl3;
      shared_flow_field(stage, K, kv4, kb4, kl4);
      s.v += (h / 6.0) * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
      s.b += (h / 6.0) * (kb1 + 2.0 * kb2 + 2.0 * kb3 + kb4);
      s.lambda += (h / 6.0) * (kl1 + 2.0 * kl2 + 2.0 * kl3 + kl4);
    } else {
      // Alternating Euler: discriminator (lambda) first, then (v, b).
      shared_flow_field(s, K, kv1, kb1, kl1);
      s.lambda += h_disc * kl1;
      s.lambda = std::max(s.lambda, 1e-8);
      shared_flow_field(s, K, kv2, kb2, kl2);
      s.v += h * kv2;
      s.b += h * kb2;
    }
    s.v.normalize();
    s.b = std::max(s.b, 0.0);
    s.lambda = std::max(s.lambda, 1e-8);
    s.t = start.t + (step + 1) * h;
    if (!s.v.allFinite() || !std::isfinite(s.b) || !std::isfinite(s.lambda) ||
        std::abs(s.b) > 1e6 || s.lambda > 1e6) {
      throw Error(ErrorCode::StepBlowup, "shared flow state blew up");
    }
    double lv = lyap(s);
    traj.max_lyapunov_increase = std::max(traj.max_lyapunov_increase, lv - prev_l);
    prev_l = lv;
    if ((step + 1) % opts.record_stride == 0 || step + 1 == steps) record(s, lv);
  }
  return traj;
}

}  // namespace ganlab

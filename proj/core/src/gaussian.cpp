#include "ganlab/gaussian.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ganlab/error.hpp"
#include "ganlab/stats.hpp"

namespace ganlab {

namespace {

void require_symmetric(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NotSymmetric, "matrix is not square");
  }
  double scale = m.cwiseAbs().maxCoeff();
  double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > rel_tol * std::max(scale, 1e-300)) {
    throw Error(ErrorCode::NotSymmetric, "matrix asymmetry exceeds tolerance");
  }
}

Eigen::VectorXd clamped_eigenvalues(const Eigen::VectorXd& descending) {
  double lambda_max = std::max(descending(0), 0.0);
  double tol = 1e-10 * lambda_max;
  Eigen::VectorXd out = descending;
  for (int i = 0; i < out.size(); ++i) {
    if (out(i) < -tol) {
      throw Error(ErrorCode::NegativeEigenvalue,
                  "eigenvalue " + std::to_string(out(i)) + " below clamp threshold");
    }
    if (out(i) < 0) out(i) = 0;
  }
  return out;
}

}  // namespace

SpectralDecomp spectral(const Eigen::MatrixXd& symmetric) {
  require_symmetric(symmetric, 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (symmetric + symmetric.transpose()));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalError, "eigendecomposition failed");
  }
  // Eigen returns ascending order; flip to descending.
  SpectralDecomp out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

GaussianModel::GaussianModel(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)) {
  if (cov.rows() != mean_.size() || cov.cols() != mean_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "mean/cov dimension mismatch");
  }
  SpectralDecomp dec = spectral(cov);
  Eigen::VectorXd vals = clamped_eigenvalues(dec.values);
  if ((dec.values.array() < 0).any()) {
    Eigen::MatrixXd rebuilt = dec.vectors * vals.asDiagonal() * dec.vectors.transpose();
    cov_ = 0.5 * (rebuilt + rebuilt.transpose());
  } else {
    cov_ = 0.5 * (cov + cov.transpose());
  }
}

GaussianModel GaussianModel::standard(int d) {
  return GaussianModel(Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Identity(d, d));
}

GaussianModel GaussianModel::isotropic(Eigen::VectorXd mean, double variance) {
  int d = static_cast<int>(mean.size());
  return GaussianModel(std::move(mean), variance * Eigen::MatrixXd::Identity(d, d));
}

bool GaussianModel::has_identity_cov(double tol) const {
  return (cov_ - Eigen::MatrixXd::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
}

Eigen::MatrixXd matrix_sqrt(const Eigen::MatrixXd& symmetric_psd) {
  SpectralDecomp dec = spectral(symmetric_psd);
  Eigen::VectorXd vals = clamped_eigenvalues(dec.values);
  Eigen::MatrixXd root =
      dec.vectors * vals.cwiseSqrt().asDiagonal() * dec.vectors.transpose();
  return 0.5 * (root + root.transpose());
}

PcaTruncation pca_truncate(const Eigen::MatrixXd& symmetric_psd, int r) {
  int d = static_cast<int>(symmetric_psd.rows());
  if (r < 1 || r > d) {
    throw Error(ErrorCode::RankOutOfRange,
                "rank " + std::to_string(r) + " outside [1, " + std::to_string(d) + "]");
  }
  SpectralDecomp dec = spectral(symmetric_psd);
  Eigen::VectorXd vals = clamped_eigenvalues(dec.values);
  Eigen::VectorXd kept = vals;
  double tail = 0.0;
  for (int i = r; i < d; ++i) {
    tail += vals(i);
    kept(i) = 0.0;
  }
  Eigen::MatrixXd truncated = dec.vectors * kept.asDiagonal() * dec.vectors.transpose();
  PcaTruncation out;
  out.cov = 0.5 * (truncated + truncated.transpose());
  out.error = std::sqrt(std::max(tail, 0.0));
  return out;
}

namespace {

// Total order on (mean, cov) pairs; gauss_w2 canonicalizes its argument
// order against it so that swapping arguments evaluates bit-identically.
bool model_precedes(const GaussianModel& a, const GaussianModel& b) {
  for (int i = 0; i < a.dim(); ++i) {
    if (a.mean()(i) != b.mean()(i)) return a.mean()(i) < b.mean()(i);
  }
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      if (a.cov()(i, j) != b.cov()(i, j)) return a.cov()(i, j) < b.cov()(i, j);
    }
  }
  return false;
}

}  // namespace

double gauss_w2(const GaussianModel& p_in, const GaussianModel& q_in) {
  if (p_in.dim() != q_in.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "gauss_w2 dimension mismatch");
  }
  const bool swap = model_precedes(q_in, p_in);
  const GaussianModel& p = swap ? q_in : p_in;
  const GaussianModel& q = swap ? p_in : q_in;
  Eigen::MatrixXd sp = matrix_sqrt(p.cov());
  Eigen::MatrixXd inner = sp * q.cov() * sp;
  inner = 0.5 * (inner + inner.transpose());
  double cross = matrix_sqrt(inner).trace();
  double w2sq = (p.mean() - q.mean()).squaredNorm() + p.cov().trace() +
                q.cov().trace() - 2.0 * cross;
  if (w2sq < 0) {
    if (w2sq < -1e-9) {
      throw Error(ErrorCode::NumericalError,
                  "gauss_w2 squared distance " + std::to_string(w2sq));
    }
    w2sq = 0;
  }
  return std::sqrt(w2sq);
}

namespace {
void require_identity_cov(const GaussianModel& g, const char* op) {
  if (!g.has_identity_cov(1e-10)) {
    throw Error(ErrorCode::NonIdentityCovariance, std::string(op) + " needs cov = I");
  }
}
}  // namespace

double gauss_tv(const GaussianModel& p, const GaussianModel& q) {
  if (p.dim() != q.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "gauss_tv dimension mismatch");
  }
  require_identity_cov(p, "gauss_tv");
  require_identity_cov(q, "gauss_tv");
  double delta = (p.mean() - q.mean()).norm();
  return 2.0 * normal_cdf(delta / 2.0) - 1.0;
}

double gauss_tukey(const GaussianModel& p, const GaussianModel& q) {
  if (p.dim() != q.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "gauss_tukey dimension mismatch");
  }
  require_identity_cov(p, "gauss_tukey");
  require_identity_cov(q, "gauss_tukey");
  double delta = (p.mean() - q.mean()).norm();
  return normal_cdf(delta) - 0.5;
}

}  // namespace ganlab

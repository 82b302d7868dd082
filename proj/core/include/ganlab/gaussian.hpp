#pragma once

#include <Eigen/Core>

namespace ganlab {

/// Eigendecomposition of a symmetric matrix with eigenvalues sorted in
/// descending order and orthonormal columns in `vectors`.
struct SpectralDecomp {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  Eigen::MatrixXd reconstruct() const {
    return vectors * values.asDiagonal() * vectors.transpose();
  }
};

/// Member of the Gaussian generator family N(mean, cov).
///
/// Construction validates symmetry (tolerance 1e-10 relative to the largest
/// entry) and clamps eigenvalues in [-1e-10 * lambda_max, 0) to zero;
/// anything more negative is rejected.
class GaussianModel {
 public:
  GaussianModel(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  static GaussianModel standard(int d);
  static GaussianModel isotropic(Eigen::VectorXd mean, double variance);

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }
  int dim() const { return static_cast<int>(mean_.size()); }
  bool has_identity_cov(double tol = 1e-12) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Descending-order eigendecomposition of a symmetric matrix.
SpectralDecomp spectral(const Eigen::MatrixXd& symmetric);

/// Symmetric PSD square root. Eigenvalues in [-1e-10 * lambda_max, 0) clamp
/// to zero; more negative raises NegativeEigenvalue. The result R satisfies
/// R * R = S to ~1e-8 relative Frobenius error.
Eigen::MatrixXd matrix_sqrt(const Eigen::MatrixXd& symmetric_psd);

struct PcaTruncation {
  Eigen::MatrixXd cov;  // best rank-r PSD approximation (top-r spectrum)
  double error;         // || S^{1/2} - cov^{1/2} ||_F = sqrt(sum_{i>r} lambda_i)
};

/// Top-r spectral truncation of a PSD matrix plus the square-root-space
/// Frobenius error of the truncation.
PcaTruncation pca_truncate(const Eigen::MatrixXd& symmetric_psd, int r);

/// Wasserstein-2 distance between Gaussians via the trace formula
///   W2^2 = |mu_p - mu_q|^2 + Tr(Sp) + Tr(Sq) - 2 Tr((Sp^{1/2} Sq Sp^{1/2})^{1/2}).
/// Small negative W2^2 values (above -1e-9) clamp to zero.
double gauss_w2(const GaussianModel& p, const GaussianModel& q);

/// Total variation distance between N(mu_p, I) and N(mu_q, I):
/// 2 Phi(|mu_p - mu_q| / 2) - 1.
double gauss_tv(const GaussianModel& p, const GaussianModel& q);

/// Tukey projection distance between N(mu_p, I) and N(mu_q, I):
/// Phi(|mu_p - mu_q|) - 1/2.
double gauss_tukey(const GaussianModel& p, const GaussianModel& q);

}  // namespace ganlab

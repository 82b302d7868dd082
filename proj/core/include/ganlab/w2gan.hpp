#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "ganlab/empirical.hpp"
#include "ganlab/gaussian.hpp"
#include "ganlab/robust.hpp"

namespace ganlab {

/// Affine rank-r generator g(Z) = A Z + b with Z ~ N(0, I_r); the induced
/// law is N(b, A A^T).
struct RankRGenerator {
  Eigen::MatrixXd A;  // d x r
  Eigen::VectorXd b;  // d

  int dim() const { return static_cast<int>(b.size()); }
  int rank() const { return static_cast<int>(A.cols()); }
  GaussianModel law() const { return GaussianModel(b, A * A.transpose()); }
};

/// Quadratic-GAN projection: the rank-r generator whose law minimizes the
/// moment-matching W2 distance to the sample; closed form via the top-r
/// spectrum of the empirical covariance.
RankRGenerator quadratic_gan_fit(const EmpiricalSample& sample, int r);

/// Population variant: projects a Gaussian law given by exact moments.
RankRGenerator quadratic_gan_fit(const GaussianModel& moments, int r);

/// Monte-Carlo surrogate of the plain-W2 projection objective: W2 between
/// the sample and m fresh draws from the generator law (m must equal the
/// sample size so the assignment stays square).
double naive_w2_objective(const EmpiricalSample& sample, const RankRGenerator& gen,
                          int m, std::uint64_t seed);

struct ScaleFit {
  double c_hat;      // fitted scale for the family g(Z) = c Z
  double rho;        // estimated maximal coupling correlation
  double objective;  // achieved squared objective: mean sq norm - rho^2 / d
};

/// Best isotropic scale fit of a centered sample: c_hat = rho / d with rho
/// estimated by the coupling assignment.
ScaleFit naive_scale_fit(const EmpiricalSample& sample, int reps, std::uint64_t seed);

struct QaRatio {
  double rho_a;  // maximal coupling correlation between N(0,1) and Q_a
  double ratio;  // W2(N(0,1), Q_a) / inf_c W2(N(0,c^2), Q_a) = sqrt(2/(1+rho_a))
};

/// Three-atom construction Q_a = (1 - 1/a^2) delta_0 + (1/(2a^2)) (delta_-a
/// + delta_a): the ratio of the unit-variance fit to the best scale fit.
/// rho_a comes from the monotone coupling in closed form (truncated normal
/// first moments over the quantile bands).
QaRatio qa_ratio(double a);

/// Atoms/probabilities of Q_a as a 1-d discrete distribution.
DiscreteDist1D qa_distribution(double a);

struct CascadeConfig {
  double lambda = 1.0;       // weight of the low-rank residual term
  int rank = 1;              // outer generator rank
  int evals_per_start = 0;   // 0 means the 60 * (number of parameters) default
};

struct CascadeFit {
  GaussianModel inner;      // fitted full-rank intermediate Gaussian
  RankRGenerator outer;     // rank-r generator closest to the inner law
  double tv_part;           // halfspace distance of the inner fit to the sample
  double w2_part;           // low-rank residual of the inner covariance
  std::vector<double> trace;  // best objective after each evaluation
};

/// Two-stage fit: minimizes tv_prime_full(sample, N(mu, Sigma), bank)
/// + lambda * ||Sigma^{1/2} - Sigma_r^{1/2}||_F over full-rank Gaussians
/// (Cholesky parameterization), then truncates the winner to rank r.
CascadeFit cascade_fit(const EmpiricalSample& sample, const CascadeConfig& cfg,
                       const DirectionBank& bank);

}  // namespace ganlab

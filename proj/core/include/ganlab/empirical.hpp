#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "ganlab/gaussian.hpp"
#include "ganlab/rng.hpp"

namespace ganlab {

/// Uniformly weighted point cloud: n rows of d coordinates.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(Eigen::MatrixXd points);

  const Eigen::MatrixXd& points() const { return points_; }
  int n() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  Eigen::VectorXd row(int i) const { return points_.row(i); }

 private:
  Eigen::MatrixXd points_;
};

/// Finite distribution on the real line: strictly increasing atoms with
/// probabilities summing to one (tolerance 1e-12).
class DiscreteDist1D {
 public:
  DiscreteDist1D(std::vector<double> atoms, std::vector<double> probs);

  /// Equal-weight distribution on the (sorted, merged) sample values.
  static DiscreteDist1D from_sample(const EmpiricalSample& sample);

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> atoms_;
  std::vector<double> probs_;
};

/// Draw n points from a Gaussian law.
EmpiricalSample gaussian_sample(const GaussianModel& model, int n, Rng& rng);

/// Empirical mean and (1/n-normalized) covariance as a GaussianModel.
GaussianModel sample_moments(const EmpiricalSample& sample);

/// Exact W2 between equal-size uniform point clouds: the minimum over
/// permutations of the mean squared matching cost, solved by the assignment
/// algorithm. Capped at n <= 4096.
double w2_assignment(const EmpiricalSample& a, const EmpiricalSample& b);

/// Exact W2 between 1-d discrete distributions via quantile coupling on the
/// common refinement of the cumulative-probability breakpoints.
double w2_quantile_1d(const DiscreteDist1D& a, const DiscreteDist1D& b);
double w2_quantile_1d(const EmpiricalSample& a, const EmpiricalSample& b);

/// Quadratic-GAN distance between samples: W2 of the moment-matching
/// Gaussians.
double moment_w2(const EmpiricalSample& a, const EmpiricalSample& b);

/// Monte-Carlo estimate of the maximal coupling correlation
/// rho = sup_pi E[Z^T X] between N(0, I_d) and the empirical points:
/// draws m Gaussian points, solves the max-inner-product assignment against
/// the (resampled-to-m) sample, averages over `reps` replicates.
double gauss_coupling_rho(const EmpiricalSample& sample, int m, int reps,
                          std::uint64_t seed);

/// Monte-Carlo estimate of E_{X ~ N(0, I_d)} min_i |X - X_i|.
double nn_distance_mean(const EmpiricalSample& sample, int probes, std::uint64_t seed);

}  // namespace ganlab

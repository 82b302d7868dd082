#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "ganlab/empirical.hpp"
#include "ganlab/gaussian.hpp"

namespace ganlab {

/// Finite surrogate for the sup over unit directions: a deterministic
/// low-discrepancy set refreshed with seeded random directions. Default
/// size is max(512, 50 d).
class DirectionBank {
 public:
  static DirectionBank make(int d, int size = 0, std::uint64_t seed = 0);

  const Eigen::MatrixXd& directions() const { return dirs_; }  // size x d, unit rows
  int size() const { return static_cast<int>(dirs_.rows()); }
  int dim() const { return static_cast<int>(dirs_.cols()); }

  /// Bank extended with extra unit directions (extra rows appended).
  DirectionBank extended(const Eigen::MatrixXd& extra_rows) const;

 private:
  explicit DirectionBank(Eigen::MatrixXd dirs) : dirs_(std::move(dirs)) {}
  Eigen::MatrixXd dirs_;
};

/// Halfspace distance between the empirical sample and N(mu, I): for each
/// bank direction, the exact Kolmogorov-Smirnov statistic between the
/// projected sample and the projected model over all thresholds; the
/// maximum over the bank is returned. Two-sided (absolute difference).
double tv_prime(const EmpiricalSample& sample, const GaussianModel& model,
                const DirectionBank& bank);

/// Same statistic for a general Gaussian model: each 1-d projection is
/// compared against N(v^T mu, v^T cov v). Reduces to tv_prime for cov = I.
double tv_prime_full(const EmpiricalSample& sample, const GaussianModel& model,
                     const DirectionBank& bank);

/// Tukey projection distance in [0, 1/2]: max over directions of the sample
/// fraction strictly on the positive side of the hyperplane through
/// `candidate_mean`, minus 1/2. d <= 2 is evaluated exactly by angular
/// sweep / sign counting; higher d uses the bank.
double tukey_distance(const EmpiricalSample& sample, const Eigen::VectorXd& candidate_mean,
                      const DirectionBank& bank);

enum class LocationDistance { TvPrime, Tukey };

struct LocationFitOptions {
  int evals_per_start = 0;  // 0 means the 200 d default
};

struct LocationFit {
  Eigen::VectorXd mean;
  double objective;
  std::string start;  // which start produced the optimum
  int evals;
};

/// Location estimate: minimizes the chosen distance over candidate means by
/// multi-start Nelder-Mead (starts: coordinatewise median, empirical mean,
/// trimmed mean).
LocationFit fit_location(const EmpiricalSample& sample, LocationDistance distance,
                         const DirectionBank& bank, const LocationFitOptions& opts = {});

enum class OutlierMode { PointMass, ShiftedGaussian };

struct ContaminationSpec {
  double epsilon = 0.0;           // fraction in [0, 1/2)
  OutlierMode mode = OutlierMode::PointMass;
  Eigen::VectorXd outlier_location;
  Eigen::VectorXd true_mean;
  int dim = 0;
  int n = 0;
  std::uint64_t seed = 0;
};

struct Contaminated {
  EmpiricalSample sample;
  Eigen::VectorXd true_mean;
  int outlier_rows;  // the last outlier_rows rows of the sample are outliers
};

/// Clean N(true_mean, I) draws with exactly floor(epsilon n) outlier rows
/// appended; deterministic given the spec seed.
Contaminated contaminate(const ContaminationSpec& spec);

}  // namespace ganlab

#include "ganlab/robust.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ganlab/error.hpp"
#include "ganlab/neldermead.hpp"
#include "ganlab/stats.hpp"

namespace ganlab {

namespace {

// Root of x^{d+1} = x + 1; drives the additive low-discrepancy recurrence.
double harmonious_root(int d) {
  double x = 1.5;
  for (int i = 0; i < 64; ++i) x = std::pow(1.0 + x, 1.0 / (d + 1));
  return x;
}

}  // namespace

DirectionBank DirectionBank::make(int d, int size, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorCode::BadValue, "direction bank needs d >= 1");
  if (d == 1) {
    Eigen::MatrixXd dirs(2, 1);
    dirs << 1.0, -1.0;
    return DirectionBank(std::move(dirs));
  }
  if (size <= 0) size = std::max(512, 50 * d);
  Eigen::MatrixXd dirs(size, d);
  const int quasi = size / 2;
  const double phi = harmonious_root(d);
  Eigen::VectorXd alpha(d);
  for (int j = 0; j < d; ++j) alpha(j) = std::pow(1.0 / phi, j + 1);
  for (int k = 0; k < quasi; ++k) {
    for (int j = 0; j < d; ++j) {
      double u = std::fmod(0.5 + (k + 1) * alpha(j), 1.0);
      u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
      dirs(k, j) = normal_quantile(u);
    }
  }
  Rng rng(seed, 0x6469726563ULL);
  for (int k = quasi; k < size; ++k) dirs.row(k) = rng.normal_vector(d).transpose();
  for (int k = 0; k < size; ++k) {
    double norm = dirs.row(k).norm();
    if (norm < 1e-12) dirs.row(k).setUnit(0);
    else dirs.row(k) /= norm;
  }
  return DirectionBank(std::move(dirs));
}

DirectionBank DirectionBank::extended(const Eigen::MatrixXd& extra_rows) const {
  if (extra_rows.cols() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "extra directions dimension mismatch");
  }
  Eigen::MatrixXd dirs(size() + extra_rows.rows(), dim());
  dirs.topRows(size()) = dirs_;
  for (int k = 0; k < extra_rows.rows(); ++k) {
    double norm = extra_rows.row(k).norm();
    if (norm < 1e-12) throw Error(ErrorCode::BadValue, "zero direction");
    dirs.row(size() + k) = extra_rows.row(k) / norm;
  }
  return DirectionBank(std::move(dirs));
}

namespace {

// Exact sup over thresholds of |F_hat - G| for sorted projections against a
// 1-d Gaussian (or point-mass when sigma ~ 0).
double ks_statistic(const std::vector<double>& sorted, double mu, double sigma) {
  const int n = static_cast<int>(sorted.size());
  if (sigma < 1e-12) {
    int below = 0, above = 0;
    for (double t : sorted) {
      if (t < mu) ++below;
      else if (t > mu) ++above;
    }
    return std::max(below, above) / static_cast<double>(n);
  }
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = normal_cdf((sorted[i] - mu) / sigma);
    d = std::max(d, std::max((i + 1) / static_cast<double>(n) - g,
                             g - i / static_cast<double>(n)));
  }
  return d;
}

struct ProjectedSample {
  std::vector<std::vector<double>> sorted;  // per bank direction

  ProjectedSample(const EmpiricalSample& sample, const DirectionBank& bank) {
    const int m = bank.size();
    sorted.resize(m);
    Eigen::MatrixXd proj = sample.points() * bank.directions().transpose();
    for (int k = 0; k < m; ++k) {
      sorted[k].assign(proj.col(k).data(), proj.col(k).data() + sample.n());
      std::sort(sorted[k].begin(), sorted[k].end());
    }
  }

  double tv_prime_at(const DirectionBank& bank, const Eigen::VectorXd& mu,
                     const Eigen::MatrixXd* cov) const {
    double best = 0.0;
    for (size_t k = 0; k < sorted.size(); ++k) {
      Eigen::VectorXd v = bank.directions().row(k);
      double m1 = v.dot(mu);
      double sigma = 1.0;
      if (cov) sigma = std::sqrt(std::max(v.dot(*cov * v), 0.0));
      best = std::max(best, ks_statistic(sorted[k], m1, sigma));
    }
    return best;
  }
};

void require_matching_dims(const EmpiricalSample& sample, int model_dim,
                           const DirectionBank& bank) {
  if (sample.dim() != model_dim || bank.dim() != sample.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "sample/model/bank dimension mismatch");
  }
}

}  // namespace

double tv_prime(const EmpiricalSample& sample, const GaussianModel& model,
                const DirectionBank& bank) {
  require_matching_dims(sample, model.dim(), bank);
  if (!model.has_identity_cov(1e-10)) {
    throw Error(ErrorCode::NonIdentityCovariance, "tv_prime needs cov = I");
  }
  ProjectedSample proj(sample, bank);
  return proj.tv_prime_at(bank, model.mean(), nullptr);
}

double tv_prime_full(const EmpiricalSample& sample, const GaussianModel& model,
                     const DirectionBank& bank) {
  require_matching_dims(sample, model.dim(), bank);
  ProjectedSample proj(sample, bank);
  Eigen::MatrixXd cov = model.cov();
  return proj.tv_prime_at(bank, model.mean(), &cov);
}

namespace {

double tukey_exact_1d(const EmpiricalSample& sample, double c) {
  int above = 0, below = 0;
  for (int i = 0; i < sample.n(); ++i) {
    double x = sample.points()(i, 0);
    if (x > c) ++above;
    else if (x < c) ++below;
  }
  return std::max(above, below) / static_cast<double>(sample.n()) - 0.5;
}

constexpr double kPi = 3.14159265358979323846;

// Max number of direction vectors u_i in an open half-plane, by angular
// sweep; points exactly at the candidate never count.
double tukey_exact_2d(const EmpiricalSample& sample, const Eigen::Vector2d& c) {
  std::vector<double> angles;
  angles.reserve(sample.n());
  for (int i = 0; i < sample.n(); ++i) {
    Eigen::Vector2d u = sample.points().row(i).transpose() - c;
    if (u.norm() == 0) continue;
    angles.push_back(std::atan2(u.y(), u.x()));
  }
  const int m = static_cast<int>(angles.size());
  if (m == 0) return -0.5;
  std::sort(angles.begin(), angles.end());
  std::vector<double> ext(angles);
  for (double a : angles) ext.push_back(a + 2 * kPi);
  int best = 0;
  size_t hi = 0;
  for (int j = 0; j < m; ++j) {
    if (hi < static_cast<size_t>(j)) hi = static_cast<size_t>(j);
    while (hi < ext.size() && ext[hi] < angles[j] + kPi) ++hi;
    best = std::max(best, static_cast<int>(hi) - j);
  }
  return best / static_cast<double>(sample.n()) - 0.5;
}

}  // namespace

double tukey_distance(const EmpiricalSample& sample, const Eigen::VectorXd& candidate_mean,
                      const DirectionBank& bank) {
  if (sample.dim() != candidate_mean.size() || bank.dim() != sample.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "sample/candidate/bank dimension mismatch");
  }
  if (sample.dim() == 1) return tukey_exact_1d(sample, candidate_mean(0));
  if (sample.dim() == 2) return tukey_exact_2d(sample, candidate_mean);
  Eigen::VectorXd proj_c = bank.directions() * candidate_mean;
  Eigen::MatrixXd proj = sample.points() * bank.directions().transpose();
  int best = 0;
  for (int k = 0; k < bank.size(); ++k) {
    int count = 0;
    for (int i = 0; i < sample.n(); ++i)
      if (proj(i, k) > proj_c(k)) ++count;
    best = std::max(best, count);
  }
  return best / static_cast<double>(sample.n()) - 0.5;
}

namespace {

Eigen::VectorXd coordinatewise_median(const EmpiricalSample& sample) {
  Eigen::VectorXd out(sample.dim());
  for (int j = 0; j < sample.dim(); ++j) {
    std::vector<double> col(sample.points().col(j).data(),
                            sample.points().col(j).data() + sample.n());
    out(j) = median(std::move(col));
  }
  return out;
}

Eigen::VectorXd trimmed_mean(const EmpiricalSample& sample, double trim) {
  Eigen::VectorXd out(sample.dim());
  const int n = sample.n();
  int lo = static_cast<int>(std::floor(trim * n));
  int hi = n - lo;
  if (hi <= lo) return sample.points().colwise().mean();
  for (int j = 0; j < sample.dim(); ++j) {
    std::vector<double> col(sample.points().col(j).data(),
                            sample.points().col(j).data() + n);
    std::sort(col.begin(), col.end());
    double sum = 0.0;
    for (int i = lo; i < hi; ++i) sum += col[i];
    out(j) = sum / (hi - lo);
  }
  return out;
}

}  // namespace

LocationFit fit_location(const EmpiricalSample& sample, LocationDistance distance,
                         const DirectionBank& bank, const LocationFitOptions& opts) {
  const int d = sample.dim();
  int budget = opts.evals_per_start > 0 ? opts.evals_per_start : 200 * d;

  // Projections onto the bank do not depend on the candidate mean, so the
  // sorted columns are shared by every objective evaluation.
  ProjectedSample proj(sample, bank);
  auto objective = [&](const Eigen::VectorXd& mu) -> double {
    if (distance == LocationDistance::TvPrime) return proj.tv_prime_at(bank, mu, nullptr);
    return tukey_distance(sample, mu, bank);
  };

  struct Start {
    const char* name;
    Eigen::VectorXd x;
  };
  std::vector<Start> starts{{"median", coordinatewise_median(sample)},
                            {"mean", sample.points().colwise().mean()},
                            {"trimmed-mean", trimmed_mean(sample, 0.2)}};

  LocationFit best;
  best.objective = std::numeric_limits<double>::infinity();
  best.evals = 0;
  NelderMeadOptions nm;
  nm.max_evals = budget;
  nm.initial_step = 0.25;
  for (const auto& start : starts) {
    NelderMeadResult res = nelder_mead(objective, start.x, nm);
    best.evals += res.evals;
    if (std::isfinite(res.fval) && res.fval < best.objective) {
      best.objective = res.fval;
      best.mean = res.x;
      best.start = start.name;
    }
  }
  if (!std::isfinite(best.objective)) {
    throw Error(ErrorCode::OptimizerFailed, "all starts produced non-finite objectives");
  }
  return best;
}

Contaminated contaminate(const ContaminationSpec& spec) {
  if (spec.epsilon < 0 || spec.epsilon >= 0.5) {
    throw Error(ErrorCode::InvalidSpec, "epsilon must lie in [0, 1/2)");
  }
  if (spec.n < 1 || spec.dim < 1) {
    throw Error(ErrorCode::InvalidSpec, "need n >= 1 and dim >= 1");
  }
  if (spec.true_mean.size() != spec.dim) {
    throw Error(ErrorCode::InvalidSpec, "true_mean dimension mismatch");
  }
  int n_out = static_cast<int>(std::floor(spec.epsilon * spec.n));
  if (n_out > 0 && spec.outlier_location.size() != spec.dim) {
    throw Error(ErrorCode::InvalidSpec, "outlier_location dimension mismatch");
  }
  Rng rng(spec.seed);
  Eigen::MatrixXd pts(spec.n, spec.dim);
  int n_clean = spec.n - n_out;
  for (int i = 0; i < n_clean; ++i) {
    pts.row(i) = (spec.true_mean + rng.normal_vector(spec.dim)).transpose();
  }
  for (int i = n_clean; i < spec.n; ++i) {
    if (spec.mode == OutlierMode::PointMass) {
      pts.row(i) = spec.outlier_location.transpose();
    } else {
      pts.row(i) = (spec.outlier_location + rng.normal_vector(spec.dim)).transpose();
    }
  }
  return Contaminated{EmpiricalSample(std::move(pts)), spec.true_mean, n_out};
}

}  // namespace ganlab

#include "ganlab/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ganlab/assignment.hpp"
#include "ganlab/error.hpp"
#include "ganlab/parallel.hpp"
#include "ganlab/stats.hpp"

namespace ganlab {

EmpiricalSample::EmpiricalSample(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw Error(ErrorCode::InvalidDistribution, "sample needs n >= 1 and d >= 1");
  }
  if (!points_.allFinite()) {
    throw Error(ErrorCode::InvalidDistribution, "sample has non-finite entries");
  }
}

DiscreteDist1D::DiscreteDist1D(std::vector<double> atoms, std::vector<double> probs)
    : atoms_(std::move(atoms)), probs_(std::move(probs)) {
  if (atoms_.empty() || atoms_.size() != probs_.size()) {
    throw Error(ErrorCode::InvalidDistribution, "atoms/probs size mismatch");
  }
  double total = 0.0;
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (i > 0 && !(atoms_[i] > atoms_[i - 1])) {
      throw Error(ErrorCode::InvalidDistribution, "atoms must be strictly increasing");
    }
    if (probs_[i] < 0) {
      throw Error(ErrorCode::InvalidDistribution, "negative probability");
    }
    total += probs_[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidDistribution, "probabilities sum to " + std::to_string(total));
  }
}

DiscreteDist1D DiscreteDist1D::from_sample(const EmpiricalSample& sample) {
  if (sample.dim() != 1) {
    throw Error(ErrorCode::DimensionNot1D, "from_sample needs d = 1");
  }
  std::vector<double> vals(sample.points().data(), sample.points().data() + sample.n());
  std::sort(vals.begin(), vals.end());
  std::vector<double> atoms, probs;
  const double w = 1.0 / static_cast<double>(vals.size());
  for (double v : vals) {
    if (!atoms.empty() && v == atoms.back()) {
      probs.back() += w;
    } else {
      atoms.push_back(v);
      probs.push_back(w);
    }
  }
  // Renormalize exactly to absorb accumulated rounding.
  double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= total;
  return DiscreteDist1D(std::move(atoms), std::move(probs));
}

EmpiricalSample gaussian_sample(const GaussianModel& model, int n, Rng& rng) {
  Eigen::MatrixXd z = rng.normal_matrix(n, model.dim());
  Eigen::MatrixXd root = matrix_sqrt(model.cov());
  Eigen::MatrixXd pts = z * root;  // root symmetric, so this is (root z^T)^T
  pts.rowwise() += model.mean().transpose();
  return EmpiricalSample(std::move(pts));
}

GaussianModel sample_moments(const EmpiricalSample& sample) {
  const Eigen::MatrixXd& x = sample.points();
  Eigen::VectorXd mean = x.colwise().mean();
  Eigen::MatrixXd centered = x.rowwise() - mean.transpose();
  Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(sample.n());
  return GaussianModel(std::move(mean), std::move(cov));
}

double w2_assignment(const EmpiricalSample& a, const EmpiricalSample& b) {
  if (a.n() != b.n()) {
    throw Error(ErrorCode::SizeMismatch, "w2_assignment needs equal sample sizes");
  }
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "w2_assignment dimension mismatch");
  }
  const int n = a.n();
  if (n > 4096) {
    throw Error(ErrorCode::TooLarge, "w2_assignment capped at n = 4096");
  }
  // Squared-distance cost via the norm expansion; exact assignment on top.
  Eigen::VectorXd na = a.points().rowwise().squaredNorm();
  Eigen::VectorXd nb = b.points().rowwise().squaredNorm();
  Eigen::MatrixXd cost = -2.0 * (a.points() * b.points().transpose());
  cost.colwise() += na;
  cost.rowwise() += nb.transpose();
  cost = cost.cwiseMax(0.0);
  Assignment match = solve_assignment(cost);
  // Re-accumulate exact squared distances for the matched pairs; the norm
  // expansion above can lose precision for nearby points.
  std::vector<double> terms(n);
  for (int i = 0; i < n; ++i) {
    terms[i] = (a.points().row(i) - b.points().row(match.col_of_row[i])).squaredNorm();
  }
  double mean_sq = stable_sum(std::move(terms)) / static_cast<double>(n);
  return std::sqrt(std::max(mean_sq, 0.0));
}

double w2_quantile_1d(const DiscreteDist1D& a, const DiscreteDist1D& b) {
  const auto& xa = a.atoms();
  const auto& xb = b.atoms();
  size_t ia = 0, ib = 0;
  double ca = a.probs()[0], cb = b.probs()[0];  // mass remaining at current atom
  std::vector<double> terms;
  terms.reserve(xa.size() + xb.size());
  // Walk the common refinement of the two quantile functions.
  while (ia < xa.size() && ib < xb.size()) {
    double step = std::min(ca, cb);
    double diff = xa[ia] - xb[ib];
    if (step > 0) terms.push_back(step * diff * diff);
    ca -= step;
    cb -= step;
    if (ca <= 1e-15) {
      ++ia;
      ca = ia < xa.size() ? a.probs()[ia] : 0.0;
    }
    if (cb <= 1e-15) {
      ++ib;
      cb = ib < xb.size() ? b.probs()[ib] : 0.0;
    }
  }
  double w2sq = stable_sum(std::move(terms));
  return std::sqrt(std::max(w2sq, 0.0));
}

double w2_quantile_1d(const EmpiricalSample& a, const EmpiricalSample& b) {
  if (a.dim() != 1 || b.dim() != 1) {
    throw Error(ErrorCode::DimensionNot1D, "w2_quantile_1d needs d = 1");
  }
  return w2_quantile_1d(DiscreteDist1D::from_sample(a), DiscreteDist1D::from_sample(b));
}

double moment_w2(const EmpiricalSample& a, const EmpiricalSample& b) {
  return gauss_w2(sample_moments(a), sample_moments(b));
}

double gauss_coupling_rho(const EmpiricalSample& sample, int m, int reps,
                          std::uint64_t seed) {
  if (m < 1 || reps < 1) {
    throw Error(ErrorCode::BadValue, "gauss_coupling_rho needs m >= 1, reps >= 1");
  }
  const int n = sample.n();
  const int d = sample.dim();
  std::vector<double> estimates(reps);
  parallel_for(reps, [&](int rep) {
    Rng rng(seed, static_cast<std::uint64_t>(rep));
    Eigen::MatrixXd z = rng.normal_matrix(m, d);
    Eigen::MatrixXd x;
    if (m == n) {
      x = sample.points();
    } else {
      // Resample the empirical support with replacement to keep the
      // assignment square. Indices depend only on (seed, rep).
      x.resize(m, d);
      for (int i = 0; i < m; ++i) x.row(i) = sample.points().row(rng.uniform_int(0, n - 1));
    }
    Eigen::MatrixXd cost = -(z * x.transpose());  // maximize sum of inner products
    Assignment match = solve_assignment(cost);
    std::vector<double> terms(m);
    for (int i = 0; i < m; ++i) terms[i] = z.row(i).dot(x.row(match.col_of_row[i]));
    estimates[rep] = stable_sum(std::move(terms)) / static_cast<double>(m);
  });
  return stable_sum(std::move(estimates)) / static_cast<double>(reps);
}

double nn_distance_mean(const EmpiricalSample& sample, int probes, std::uint64_t seed) {
  if (probes < 1) {
    throw Error(ErrorCode::BadValue, "nn_distance_mean needs probes >= 1");
  }
  const int d = sample.dim();
  Rng rng(seed);
  std::vector<double> dists(probes);
  Eigen::VectorXd probe(d);
  for (int p = 0; p < probes; ++p) {
    probe = rng.normal_vector(d);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < sample.n(); ++i) {
      double sq = (sample.points().row(i).transpose() - probe).squaredNorm();
      if (sq < best) best = sq;
    }
    dists[p] = std::sqrt(best);
  }
  return stable_sum(std::move(dists)) / static_cast<double>(probes);
}

}  // namespace ganlab

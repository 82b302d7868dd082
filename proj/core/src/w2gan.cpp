#include "ganlab/w2gan.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ganlab/error.hpp"
#include "ganlab/neldermead.hpp"
#include "ganlab/stats.hpp"

namespace ganlab {

namespace {

RankRGenerator fit_from_moments(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                                int r) {
  const int d = static_cast<int>(mean.size());
  if (r < 1 || r > d) {
    throw Error(ErrorCode::RankOutOfRange,
                "rank " + std::to_string(r) + " outside [1, " + std::to_string(d) + "]");
  }
  SpectralDecomp dec = spectral(cov);
  RankRGenerator gen;
  gen.b = mean;
  gen.A.resize(d, r);
  for (int i = 0; i < r; ++i) {
    gen.A.col(i) = dec.vectors.col(i) * std::sqrt(std::max(dec.values(i), 0.0));
  }
  return gen;
}

}  // namespace

RankRGenerator quadratic_gan_fit(const EmpiricalSample& sample, int r) {
  GaussianModel moments = sample_moments(sample);
  return fit_from_moments(moments.mean(), moments.cov(), r);
}

RankRGenerator quadratic_gan_fit(const GaussianModel& moments, int r) {
  return fit_from_moments(moments.mean(), moments.cov(), r);
}

double naive_w2_objective(const EmpiricalSample& sample, const RankRGenerator& gen,
                          int m, std::uint64_t seed) {
  if (gen.dim() != sample.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "generator dimension mismatch");
  }
  if (m != sample.n()) {
    throw Error(ErrorCode::SizeMismatch,
                "naive objective needs m equal to the sample size");
  }
  Rng rng(seed, 0x57324f424aULL);
  Eigen::MatrixXd z = rng.normal_matrix(m, gen.rank());
  Eigen::MatrixXd pts = z * gen.A.transpose();
  pts.rowwise() += gen.b.transpose();
  return w2_assignment(sample, EmpiricalSample(std::move(pts)));
}

ScaleFit naive_scale_fit(const EmpiricalSample& sample, int reps, std::uint64_t seed) {
  Eigen::MatrixXd centered =
      sample.points().rowwise() - sample.points().colwise().mean();
  double mean_sq = centered.rowwise().squaredNorm().mean();
  ScaleFit out;
  if (mean_sq == 0.0) {
    out.c_hat = 0.0;
    out.rho = 0.0;
    out.objective = 0.0;
    return out;
  }
  EmpiricalSample centered_sample(std::move(centered));
  const int d = sample.dim();
  out.rho = gauss_coupling_rho(centered_sample, sample.n(), reps, seed);
  out.c_hat = out.rho / d;
  out.objective = mean_sq - out.rho * out.rho / d;
  return out;
}

DiscreteDist1D qa_distribution(double a) {
  if (!(a > 1.0)) throw Error(ErrorCode::InvalidA, "qa needs a > 1");
  double p_tail = 0.5 / (a * a);
  return DiscreteDist1D({-a, 0.0, a}, {p_tail, 1.0 - 2.0 * p_tail, p_tail});
}

QaRatio qa_ratio(double a) {
  if (!(a > 1.0)) throw Error(ErrorCode::InvalidA, "qa needs a > 1");
  // Monotone coupling: Y = +-a on the outer 1/(2a^2) quantile bands of Z,
  // zero in between. E[Z; Z >= t] = phi(t), so rho = 2 a phi(t) with
  // t = Phi^{-1}(1 - 1/(2a^2)).
  double t = normal_quantile(1.0 - 0.5 / (a * a));
  QaRatio out;
  out.rho_a = 2.0 * a * normal_upper_partial_moment(t);
  out.ratio = std::sqrt(2.0 / (1.0 + out.rho_a));
  return out;
}

namespace {

// Lower-triangular Cholesky factor packed column-major into a flat vector.
Eigen::MatrixXd unpack_cholesky(const Eigen::VectorXd& params, int d, int offset) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(d, d);
  int idx = offset;
  for (int j = 0; j < d; ++j)
    for (int i = j; i < d; ++i) L(i, j) = params(idx++);
  return L;
}

Eigen::VectorXd pack_start(const Eigen::VectorXd& mu, const Eigen::MatrixXd& cov) {
  const int d = static_cast<int>(mu.size());
  // Stabilized Cholesky: add a floor so degenerate starts stay factorable.
  Eigen::MatrixXd shifted = cov + 1e-8 * Eigen::MatrixXd::Identity(d, d);
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  Eigen::MatrixXd L = llt.matrixL();
  Eigen::VectorXd params(d + d * (d + 1) / 2);
  params.head(d) = mu;
  int idx = d;
  for (int j = 0; j < d; ++j)
    for (int i = j; i < d; ++i) params(idx++) = L(i, j);
  return params;
}

double low_rank_residual(const Eigen::MatrixXd& cov, int r) {
  SpectralDecomp dec = spectral(cov);
  double tail = 0.0;
  for (int i = r; i < dec.values.size(); ++i) tail += std::max(dec.values(i), 0.0);
  return std::sqrt(tail);
}

}  // namespace

CascadeFit cascade_fit(const EmpiricalSample& sample, const CascadeConfig& cfg,
                       const DirectionBank& bank) {
  if (!(cfg.lambda > 0)) throw Error(ErrorCode::InvalidSpec, "lambda must be positive");
  const int d = sample.dim();
  if (cfg.rank < 1 || cfg.rank > d) {
    throw Error(ErrorCode::RankOutOfRange, "cascade rank outside [1, d]");
  }
  const int n_params = d + d * (d + 1) / 2;
  int budget = cfg.evals_per_start > 0 ? cfg.evals_per_start : 60 * n_params;

  // Sample projections are candidate-independent; share across evaluations.
  Eigen::MatrixXd proj = sample.points() * bank.directions().transpose();
  std::vector<std::vector<double>> sorted(bank.size());
  for (int k = 0; k < bank.size(); ++k) {
    sorted[k].assign(proj.col(k).data(), proj.col(k).data() + sample.n());
    std::sort(sorted[k].begin(), sorted[k].end());
  }
  const int n = sample.n();
  auto ks = [&](const std::vector<double>& t, double mu, double sigma) {
    if (sigma < 1e-12) {
      int below = 0, above = 0;
      for (double x : t) {
        if (x < mu) ++below;
        else if (x > mu) ++above;
      }
      return std::max(below, above) / static_cast<double>(n);
    }
    double dmax = 0.0;
    for (int i = 0; i < n; ++i) {
      double g = normal_cdf((t[i] - mu) / sigma);
      dmax = std::max(dmax, std::max((i + 1) / static_cast<double>(n) - g,
                                     g - i / static_cast<double>(n)));
    }
    return dmax;
  };

  auto objective_parts = [&](const Eigen::VectorXd& params, double* tv_out,
                             double* w2_out) {
    Eigen::VectorXd mu = params.head(d);
    Eigen::MatrixXd L = unpack_cholesky(params, d, d);
    Eigen::MatrixXd cov = L * L.transpose();
    double tv = 0.0;
    for (int k = 0; k < bank.size(); ++k) {
      Eigen::VectorXd v = bank.directions().row(k);
      double sigma = (L.transpose() * v).norm();
      tv = std::max(tv, ks(sorted[k], v.dot(mu), sigma));
    }
    double w2 = low_rank_residual(cov, cfg.rank);
    if (tv_out) *tv_out = tv;
    if (w2_out) *w2_out = w2;
    return tv + cfg.lambda * w2;
  };
  auto objective = [&](const Eigen::VectorXd& params) {
    return objective_parts(params, nullptr, nullptr);
  };

  // Starts: plain moments and a coordinatewise-robust (median / scaled MAD)
  // diagonal model that survives heavy contamination.
  GaussianModel moments = sample_moments(sample);
  Eigen::VectorXd med(d), mad(d);
  for (int j = 0; j < d; ++j) {
    std::vector<double> col(sample.points().col(j).data(),
                            sample.points().col(j).data() + sample.n());
    med(j) = median(col);
    for (double& c : col) c = std::abs(c - med(j));
    mad(j) = 1.4826 * median(std::move(col));
  }
  Eigen::MatrixXd robust_cov = mad.cwiseMax(1e-4).cwiseAbs2().asDiagonal();

  std::vector<Eigen::VectorXd> starts{pack_start(moments.mean(), moments.cov()),
                                      pack_start(med, robust_cov)};

  NelderMeadOptions nm;
  nm.max_evals = budget;
  nm.initial_step = 0.1;
  std::vector<double> trace;
  double best_val = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_params;
  for (const auto& s : starts) {
    NelderMeadResult res = nelder_mead(objective, s, nm);
    // Continue the nonincreasing best-so-far trace across starts.
    double floor = trace.empty() ? std::numeric_limits<double>::infinity() : trace.back();
    for (double v : res.trace) {
      floor = std::min(floor, v);
      trace.push_back(floor);
    }
    if (std::isfinite(res.fval) && res.fval < best_val) {
      best_val = res.fval;
      best_params = res.x;
    }
  }
  if (!std::isfinite(best_val)) {
    throw Error(ErrorCode::OptimizerFailed, "cascade objective never became finite");
  }

  double tv = 0.0, w2 = 0.0;
  objective_parts(best_params, &tv, &w2);
  Eigen::VectorXd mu = best_params.head(d);
  Eigen::MatrixXd L = unpack_cholesky(best_params, d, d);
  GaussianModel inner(mu, L * L.transpose());
  RankRGenerator outer = quadratic_gan_fit(inner, cfg.rank);
  return CascadeFit{std::move(inner), std::move(outer), tv, w2, std::move(trace)};
}

}  // namespace ganlab

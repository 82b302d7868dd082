#include "ganlab/matching.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ganlab/error.hpp"

namespace ganlab {

std::pair<EmpiricalSample, EmpiricalSample> split_halves(const EmpiricalSample& source,
                                                         int n, std::uint64_t seed) {
  if (source.n() < 2 * n) {
    throw Error(ErrorCode::InsufficientSamples,
                "need at least 2n = " + std::to_string(2 * n) + " rows");
  }
  std::vector<int> idx(source.n());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed, 0x73706c6974ULL);
  std::shuffle(idx.begin(), idx.end(), rng.engine());
  Eigen::MatrixXd first(n, source.dim()), second(n, source.dim());
  for (int i = 0; i < n; ++i) {
    first.row(i) = source.points().row(idx[i]);
    second.row(i) = source.points().row(idx[n + i]);
  }
  return {EmpiricalSample(std::move(first)), EmpiricalSample(std::move(second))};
}

double matching_proxy(const EmpiricalSample& source, int n,
                      const SampleDistance& distance, std::uint64_t seed) {
  auto [first, second] = split_halves(source, n, seed);
  return distance(first, second);
}

RateFit fit_rate(const std::vector<RateCell>& grid, RateModel model) {
  if (grid.empty()) throw Error(ErrorCode::DegenerateGrid, "empty grid");
  std::set<int> dims;
  std::set<std::pair<int, int>> n_per_d;
  for (const auto& cell : grid) {
    if (cell.median <= 0) {
      throw Error(ErrorCode::DegenerateGrid, "non-positive median in grid");
    }
    dims.insert(cell.d);
    n_per_d.insert({cell.d, cell.n});
  }
  for (int d : dims) {
    int count = 0;
    for (const auto& [dd, nn] : n_per_d)
      if (dd == d) ++count;
    if (count < 3) {
      throw Error(ErrorCode::DegenerateGrid,
                  "need >= 3 distinct n values per d (d = " + std::to_string(d) + ")");
    }
  }
  const bool fit_d = dims.size() > 1;
  const int m = static_cast<int>(grid.size());
  const int p = fit_d ? 3 : 2;

  Eigen::MatrixXd X(m, p);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    const auto& cell = grid[i];
    double ln_n = std::log(static_cast<double>(cell.n));
    X(i, 0) = 1.0;
    X(i, 1) = model == RateModel::PowerLaw ? ln_n : ln_n / cell.d;
    if (fit_d) X(i, 2) = std::log(static_cast<double>(cell.d));
    y(i) = std::log(cell.median);
  }
  Eigen::MatrixXd gram = X.transpose() * X;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  if (lu.rank() < p) {
    throw Error(ErrorCode::DegenerateGrid, "collinear regressors");
  }
  Eigen::VectorXd beta = lu.solve(X.transpose() * y);

  Eigen::VectorXd resid = y - X * beta;
  double ss_res = resid.squaredNorm();
  double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
  RateFit fit;
  fit.intercept = beta(0);
  fit.n_exponent = beta(1);
  if (fit_d) fit.d_exponent = beta(2);
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.model = model;
  fit.grid = grid;
  return fit;
}

SamplePrediction predict_sample_size(const RateFit& fit, double target_eps, int d) {
  if (!(target_eps > 0)) throw Error(ErrorCode::BadValue, "target_eps must be positive");
  if (fit.n_exponent >= 0) {
    throw Error(ErrorCode::NonDecreasingFit, "fitted exponent is not negative");
  }
  double log_c = fit.intercept;
  if (fit.d_exponent) log_c += *fit.d_exponent * std::log(static_cast<double>(d));

  int n_min = fit.grid.front().n, n_max = fit.grid.front().n;
  for (const auto& cell : fit.grid) {
    n_min = std::min(n_min, cell.n);
    n_max = std::max(n_max, cell.n);
  }
  // Floor: a target at or above the fitted value at the smallest n.
  double regressor_at_min = fit.model == RateModel::PowerLaw
                                ? std::log(static_cast<double>(n_min))
                                : std::log(static_cast<double>(n_min)) / d;
  double value_at_min = std::exp(log_c + fit.n_exponent * regressor_at_min);
  SamplePrediction out;
  if (target_eps >= value_at_min) {
    out.n_required = static_cast<std::uint64_t>(n_min);
    out.extrapolated = false;
    return out;
  }

  double ln_n = (std::log(target_eps) - log_c) / fit.n_exponent;
  if (fit.model == RateModel::DimScaledExponent) ln_n *= d;
  double n_exact = std::exp(ln_n);
  std::uint64_t n_pow2 = 1;
  // Round up to the next power of two, with headroom for log/exp rounding.
  while (static_cast<double>(n_pow2) * (1.0 + 1e-9) < n_exact && n_pow2 < (1ULL << 62)) {
    n_pow2 <<= 1;
  }
  out.n_required = n_pow2;
  out.extrapolated = static_cast<double>(out.n_required) > static_cast<double>(n_max);
  return out;
}

}  // namespace ganlab

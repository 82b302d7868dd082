#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ganlab/empirical.hpp"

namespace ganlab {

using SampleDistance =
    std::function<double(const EmpiricalSample&, const EmpiricalSample&)>;

/// Disjoint halves of the first 2n rows after a seeded shuffle.
std::pair<EmpiricalSample, EmpiricalSample> split_halves(const EmpiricalSample& source,
                                                         int n, std::uint64_t seed);

/// Sample-splitting proxy for the distance between a distribution and its
/// n-sample empirical version: the distance between two disjoint n-halves.
double matching_proxy(const EmpiricalSample& source, int n,
                      const SampleDistance& distance, std::uint64_t seed);

struct RateCell {
  int n;
  int d;
  double median;
  double iqr;
};

enum class RateModel {
  PowerLaw,           // value = C d^beta n^alpha
  DimScaledExponent,  // value = C d^beta n^(gamma/d)
};

struct RateFit {
  double n_exponent;                  // alpha, or gamma for DimScaledExponent
  std::optional<double> d_exponent;   // beta; absent when only one d observed
  double intercept;                   // log C
  double r_squared;
  RateModel model;
  std::vector<RateCell> grid;
};

/// Ordinary least squares on log medians over the (n, d) grid.
RateFit fit_rate(const std::vector<RateCell>& grid, RateModel model);

struct SamplePrediction {
  std::uint64_t n_required;  // rounded up to the next power of two
  bool extrapolated;         // beyond the largest fitted n
};

/// Inverts the fitted law for the sample size achieving `target_eps`.
/// Values of target_eps at or above the fitted value at the smallest grid n
/// floor to that smallest n.
SamplePrediction predict_sample_size(const RateFit& fit, double target_eps, int d);

}  // namespace ganlab

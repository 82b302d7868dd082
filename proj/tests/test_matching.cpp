#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ganlab/empirical.hpp"
#include "ganlab/error.hpp"
#include "ganlab/gaussian.hpp"
#include "ganlab/matching.hpp"
#include "ganlab/rng.hpp"
#include "ganlab/stats.hpp"

using namespace ganlab;

TEST_CASE("split_halves covers disjoint rows and validates the budget") {
  Rng rng(1);
  EmpiricalSample source(rng.normal_matrix(20, 2));
  auto [h1, h2] = split_halves(source, 10, 3);
  CHECK(h1.n() == 10);
  CHECK(h2.n() == 10);
  // Every original row appears exactly once across the halves.
  std::vector<Eigen::Vector2d> rows;
  for (int i = 0; i < 10; ++i) rows.push_back(h1.points().row(i));
  for (int i = 0; i < 10; ++i) rows.push_back(h2.points().row(i));
  for (int i = 0; i < 20; ++i) {
    int hits = 0;
    for (const auto& r : rows) {
      if ((r.transpose() - source.points().row(i)).norm() == 0.0) ++hits;
    }
    CHECK(hits == 1);
  }
  CHECK_THROWS_WITH_AS(split_halves(source, 11, 3),
                       doctest::Contains("InsufficientSamples"), Error);
}

TEST_CASE("matching proxy vanishes on a constant source") {
  EmpiricalSample constant(Eigen::MatrixXd::Ones(64, 3));
  double v = matching_proxy(constant, 32,
                            [](const EmpiricalSample& a, const EmpiricalSample& b) {
                              return w2_assignment(a, b);
                            },
                            7);
  CHECK(v == 0.0);
}

TEST_CASE("matching proxy is exchangeable across the two halves") {
  Rng rng(5);
  EmpiricalSample source(rng.normal_matrix(128, 4));
  auto [h1, h2] = split_halves(source, 64, 11);
  CHECK(w2_assignment(h1, h2) == w2_assignment(h2, h1));
  CHECK(moment_w2(h1, h2) == moment_w2(h2, h1));
}

TEST_CASE("proxy sandwiches the direct moment distance") {
  // Reference: the directly computable distance between true moments and
  // sample moments, averaged over replicates.
  const int d = 3, n = 128, reps = 60;
  GaussianModel truth = GaussianModel::standard(d);
  double mean_direct = 0.0, mean_proxy = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(40, rep);
    EmpiricalSample direct_sample = gaussian_sample(truth, n, rng);
    mean_direct += gauss_w2(sample_moments(direct_sample), truth) / reps;

    Rng rng2(41, rep);
    EmpiricalSample source = gaussian_sample(truth, 2 * n, rng2);
    mean_proxy += matching_proxy(source, n, moment_w2, mix_seed(42, rep)) / reps;
  }
  double ratio = mean_proxy / mean_direct;
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 2.1);
}

TEST_CASE("assignment-distance proxy medians decrease in n") {
  const int d = 10;
  std::vector<int> sizes{64, 128, 256};
  std::vector<double> med(sizes.size());
  for (size_t k = 0; k < sizes.size(); ++k) {
    std::vector<double> vals;
    for (int rep = 0; rep < 5; ++rep) {
      Rng rng(60 + rep, k);
      EmpiricalSample source = gaussian_sample(GaussianModel::standard(d), 2 * sizes[k], rng);
      vals.push_back(matching_proxy(source, sizes[k], w2_assignment, mix_seed(61, rep)));
    }
    med[k] = median(vals);
  }
  CHECK(med[1] < med[0]);
  CHECK(med[2] < med[1]);
}

TEST_CASE("fit_rate recovers planted exponents exactly") {
  std::vector<RateCell> grid;
  for (int d : {5, 10, 20}) {
    for (int n : {64, 128, 256, 512}) {
      double value = 2.0 * d / std::sqrt(static_cast<double>(n));
      grid.push_back({n, d, value, 0.0});
    }
  }
  RateFit fit = fit_rate(grid, RateModel::PowerLaw);
  CHECK(fit.n_exponent == doctest::Approx(-0.5).epsilon(1e-10));
  REQUIRE(fit.d_exponent.has_value());
  CHECK(*fit.d_exponent == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit_rate handles the dimension-scaled exponent model") {
  const int d = 10;
  std::vector<RateCell> grid;
  for (int n : {64, 128, 256, 512, 1024}) {
    double value = 3.0 * std::exp(-1.2 * std::log(static_cast<double>(n)) / d);
    grid.push_back({n, d, value, 0.0});
  }
  RateFit fit = fit_rate(grid, RateModel::DimScaledExponent);
  CHECK(fit.n_exponent == doctest::Approx(-1.2).epsilon(1e-10));
  CHECK(!fit.d_exponent.has_value());
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit_rate rejects degenerate grids") {
  std::vector<RateCell> two_points{{64, 5, 1.0, 0.0}, {128, 5, 0.7, 0.0}};
  CHECK_THROWS_WITH_AS(fit_rate(two_points, RateModel::PowerLaw),
                       doctest::Contains("DegenerateGrid"), Error);
  std::vector<RateCell> negative{{64, 5, 1.0, 0.0}, {128, 5, -0.5, 0.0},
                                 {256, 5, 0.3, 0.0}};
  CHECK_THROWS_AS(fit_rate(negative, RateModel::PowerLaw), Error);
  CHECK_THROWS_AS(fit_rate({}, RateModel::PowerLaw), Error);
}

TEST_CASE("predict_sample_size inverts the fitted law") {
  std::vector<RateCell> grid;
  for (int n : {16, 32, 64, 128}) {
    grid.push_back({n, 1, 2.0 / std::sqrt(static_cast<double>(n)), 0.0});
  }
  RateFit fit = fit_rate(grid, RateModel::PowerLaw);
  SamplePrediction p = predict_sample_size(fit, 0.2, 1);
  CHECK(p.n_required == 128);
  CHECK(!p.extrapolated);

  SamplePrediction tiny = predict_sample_size(fit, 0.01, 1);
  CHECK(tiny.n_required == 65536);
  CHECK(tiny.extrapolated);

  // Floor: a target coarser than the coarsest observation.
  SamplePrediction floor = predict_sample_size(fit, 10.0, 1);
  CHECK(floor.n_required == 16);
  CHECK(!floor.extrapolated);
}

TEST_CASE("predict_sample_size refuses nondecreasing fits") {
  std::vector<RateCell> grid;
  for (int n : {16, 32, 64}) {
    grid.push_back({n, 1, 0.1 * n, 0.0});
  }
  RateFit fit = fit_rate(grid, RateModel::PowerLaw);
  CHECK_THROWS_WITH_AS(predict_sample_size(fit, 0.5, 1),
                       doctest::Contains("NonDecreasingFit"), Error);
}

TEST_CASE("predict_sample_size on the dimension-scaled model") {
  const int d = 10;
  std::vector<RateCell> grid;
  for (int n : {64, 128, 256, 512}) {
    grid.push_back({n, d, 3.0 * std::exp(-1.0 * std::log(static_cast<double>(n)) / d), 0.0});
  }
  RateFit fit = fit_rate(grid, RateModel::DimScaledExponent);
  // Solve 3 n^(-1/10) = 1.5 -> n = 2^10.
  SamplePrediction p = predict_sample_size(fit, 1.5, d);
  CHECK(p.n_required == 1024);
  CHECK(p.extrapolated);
}

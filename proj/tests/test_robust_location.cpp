#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ganlab/empirical.hpp"
#include "ganlab/error.hpp"
#include "ganlab/gaussian.hpp"
#include "ganlab/robust.hpp"
#include "ganlab/stats.hpp"

using namespace ganlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Population halfspace statistic between two unit-covariance Gaussians over
// a direction bank: per direction the 1-d sup is attained at the midpoint
// threshold with value 2 Phi(|v . dmu| / 2) - 1.
double population_halfspace(const Eigen::VectorXd& mu1, const Eigen::VectorXd& mu2,
                            const DirectionBank& bank) {
  double best = 0.0;
  for (int k = 0; k < bank.size(); ++k) {
    double delta = std::abs(bank.directions().row(k).dot(mu1 - mu2));
    best = std::max(best, 2.0 * normal_cdf(delta / 2.0) - 1.0);
  }
  return best;
}

}  // namespace

TEST_CASE("direction banks have unit rows; d = 1 is the sign pair") {
  DirectionBank b3 = DirectionBank::make(3, 128, 1);
  CHECK(b3.size() == 128);
  for (int k = 0; k < b3.size(); ++k) {
    CHECK(std::abs(b3.directions().row(k).norm() - 1.0) < 1e-12);
  }
  DirectionBank b1 = DirectionBank::make(1);
  REQUIRE(b1.size() == 2);
  CHECK(b1.directions()(0, 0) == 1.0);
  CHECK(b1.directions()(1, 0) == -1.0);
  // Default sizing rule.
  CHECK(DirectionBank::make(3).size() == 512);
  CHECK(DirectionBank::make(20).size() == 1000);
}

TEST_CASE("tv_prime vanishes on clean data at the DKW scale") {
  DirectionBank bank = DirectionBank::make(3, 256, 2);
  GaussianModel model = GaussianModel::standard(3);
  for (int seed = 0; seed < 3; ++seed) {
    Rng rng(40 + seed);
    EmpiricalSample sample = gaussian_sample(model, 10000, rng);
    CHECK(tv_prime(sample, model, bank) < 0.03);
  }
}

TEST_CASE("tv_prime sees one-sided mass immediately in 1-d") {
  Eigen::MatrixXd pts(5, 1);
  pts << 0.3, 0.7, 1.1, 2.0, 3.5;  // all strictly above the model mean 0
  DirectionBank bank = DirectionBank::make(1);
  double v = tv_prime(EmpiricalSample(pts), GaussianModel::standard(1), bank);
  CHECK(v >= 0.5);
}

TEST_CASE("tv_prime population limit reproduces the Gaussian TV closed form") {
  Eigen::Vector3d mu1 = Eigen::Vector3d::Zero();
  Eigen::Vector3d mu2(1.3, -0.4, 0.2);
  Eigen::MatrixXd extra = (mu2 - mu1).transpose();
  DirectionBank bank = DirectionBank::make(3, 64, 3).extended(extra);
  GaussianModel a(mu1, Eigen::Matrix3d::Identity());
  GaussianModel b(mu2, Eigen::Matrix3d::Identity());
  CHECK(population_halfspace(mu1, mu2, bank) ==
        doctest::Approx(gauss_tv(a, b)).epsilon(1e-12));
}

TEST_CASE("tv_prime decreases with sample size on model data") {
  DirectionBank bank = DirectionBank::make(2, 128, 4);
  GaussianModel model = GaussianModel::standard(2);
  std::vector<int> sizes{100, 1000, 10000};
  std::vector<double> med(sizes.size());
  for (size_t k = 0; k < sizes.size(); ++k) {
    std::vector<double> vals;
    for (int seed = 0; seed < 20; ++seed) {
      Rng rng(700 + seed, k);
      vals.push_back(tv_prime(gaussian_sample(model, sizes[k], rng), model, bank));
    }
    med[k] = median(vals);
  }
  CHECK(med[1] < med[0]);
  CHECK(med[2] < med[1]);
}

TEST_CASE("tv_prime full-covariance variant reduces to the identity case") {
  Rng rng(9);
  EmpiricalSample sample(rng.normal_matrix(200, 2));
  DirectionBank bank = DirectionBank::make(2, 64, 5);
  GaussianModel model(Eigen::Vector2d(0.2, -0.1), Eigen::Matrix2d::Identity());
  CHECK(tv_prime_full(sample, model, bank) ==
        doctest::Approx(tv_prime(sample, model, bank)).epsilon(1e-14));
  GaussianModel wide(Eigen::Vector2d::Zero(), 4.0 * Eigen::Matrix2d::Identity());
  CHECK_THROWS_WITH_AS(tv_prime(sample, wide, bank),
                       doctest::Contains("NonIdentityCovariance"), Error);
  CHECK_NOTHROW(tv_prime_full(sample, wide, bank));
}

TEST_CASE("tukey_distance median and hull-exit values") {
  Eigen::MatrixXd sym(6, 1);
  sym << -3.0, -2.0, -1.0, 1.0, 2.0, 3.0;
  EmpiricalSample s(sym);
  DirectionBank bank = DirectionBank::make(1);
  CHECK(std::abs(tukey_distance(s, Eigen::VectorXd::Zero(1), bank)) <= 1.0 / 12 + 1e-12);

  Eigen::VectorXd far(1);
  far << 100.0;
  CHECK(tukey_distance(s, far, bank) == doctest::Approx(0.5));

  Rng rng(10);
  EmpiricalSample cloud(rng.normal_matrix(40, 2));
  Eigen::VectorXd out(2);
  out << 50.0, 50.0;
  CHECK(tukey_distance(cloud, out, DirectionBank::make(2)) == doctest::Approx(0.5));
}

TEST_CASE("tukey_distance in 2-d equals the combinatorial direction maximum") {
  // Oracle: the count of points in an open halfplane changes only when the
  // direction angle crosses a point angle +- pi/2, so scanning angles just
  // past every crossing is exhaustive.
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    EmpiricalSample s(rng.normal_matrix(7, 2));
    Eigen::Vector2d c(0.1 * trial - 0.4, 0.2);
    int best = 0;
    for (int i = 0; i < 7; ++i) {
      Eigen::Vector2d u = s.points().row(i).transpose() - c;
      double alpha = std::atan2(u.y(), u.x());
      for (double offset : {alpha + kPi / 2 + 1e-7, alpha + kPi / 2 - 1e-7,
                            alpha - kPi / 2 + 1e-7, alpha - kPi / 2 - 1e-7}) {
        Eigen::Vector2d v(std::cos(offset), std::sin(offset));
        int count = 0;
        for (int j = 0; j < 7; ++j) {
          if ((s.points().row(j).transpose() - c).dot(v) > 0) ++count;
        }
        best = std::max(best, count);
      }
    }
    double oracle = best / 7.0 - 0.5;
    CHECK(tukey_distance(s, c, DirectionBank::make(2)) ==
          doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("tukey excess count is invariant under adding a reflected pair") {
  Rng rng(14);
  EmpiricalSample s(rng.normal_matrix(9, 2));
  Eigen::Vector2d c(0.3, -0.2);
  DirectionBank bank = DirectionBank::make(2);
  double before = s.n() * tukey_distance(s, c, bank);

  Eigen::MatrixXd extended(s.n() + 2, 2);
  extended.topRows(s.n()) = s.points();
  Eigen::Vector2d p(1.7, 2.9);
  extended.row(s.n()) = p.transpose();
  extended.row(s.n() + 1) = (2.0 * c - p).transpose();
  double after = (s.n() + 2) * tukey_distance(EmpiricalSample(extended), c, bank);
  CHECK(after == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("enlarging the direction bank never decreases either distance") {
  Rng rng(16);
  EmpiricalSample sample(rng.normal_matrix(300, 4));
  GaussianModel model = GaussianModel::standard(4);
  DirectionBank small = DirectionBank::make(4, 32, 6);
  DirectionBank large = small.extended(rng.normal_matrix(64, 4));
  CHECK(tv_prime(sample, model, large) >= tv_prime(sample, model, small));
  Eigen::VectorXd c = Eigen::VectorXd::Constant(4, 0.1);
  CHECK(tukey_distance(sample, c, large) >= tukey_distance(sample, c, small));
}

TEST_CASE("fit_location recovers a clean mean") {
  Eigen::VectorXd mu(3);
  mu << 1.0, -2.0, 0.5;
  Rng rng(18);
  EmpiricalSample sample = gaussian_sample(
      GaussianModel(mu, Eigen::Matrix3d::Identity()), 2000, rng);
  DirectionBank bank = DirectionBank::make(3, 64, 7);
  LocationFitOptions opts;
  opts.evals_per_start = 120;
  LocationFit tv = fit_location(sample, LocationDistance::TvPrime, bank, opts);
  LocationFit tk = fit_location(sample, LocationDistance::Tukey, bank, opts);
  CHECK((tv.mean - mu).norm() < 0.2);
  CHECK((tk.mean - mu).norm() < 0.2);
  CHECK(tv.evals > 0);
}

TEST_CASE("fit_location shrugs off point contamination that moves the mean") {
  ContaminationSpec spec;
  spec.epsilon = 0.1;
  spec.mode = OutlierMode::PointMass;
  spec.dim = 3;
  spec.n = 1500;
  spec.seed = 77;
  spec.true_mean = Eigen::VectorXd::Zero(3);
  spec.outlier_location = Eigen::VectorXd::Zero(3);
  spec.outlier_location(0) = 10.0;
  Contaminated data = contaminate(spec);

  Eigen::VectorXd mean_est = data.sample.points().colwise().mean();
  CHECK((mean_est - data.true_mean).norm() > 0.8);  // the plain mean is dragged

  DirectionBank bank = DirectionBank::make(3, 64, 8);
  LocationFitOptions opts;
  opts.evals_per_start = 120;
  LocationFit tv = fit_location(data.sample, LocationDistance::TvPrime, bank, opts);
  LocationFit tk = fit_location(data.sample, LocationDistance::Tukey, bank, opts);
  CHECK((tv.mean - data.true_mean).norm() < 0.5);
  CHECK((tk.mean - data.true_mean).norm() < 0.5);
}

TEST_CASE("fit_location lands on the symmetry center of an exact point set") {
  // Four-point centrally symmetric configuration around (1, 2).
  Eigen::MatrixXd pts(4, 2);
  pts << 2.0, 2.0, 0.0, 2.0, 1.0, 3.5, 1.0, 0.5;
  EmpiricalSample sample(pts);
  DirectionBank bank = DirectionBank::make(2);
  LocationFitOptions opts;
  opts.evals_per_start = 200;
  LocationFit fit = fit_location(sample, LocationDistance::Tukey, bank, opts);
  CHECK((fit.mean - Eigen::Vector2d(1.0, 2.0)).norm() < 0.3);
}

TEST_CASE("contaminate counts outliers and validates epsilon") {
  ContaminationSpec spec;
  spec.epsilon = 0.1;
  spec.mode = OutlierMode::ShiftedGaussian;
  spec.dim = 2;
  spec.n = 1000;
  spec.seed = 5;
  spec.true_mean = Eigen::Vector2d::Zero();
  spec.outlier_location = Eigen::Vector2d(8.0, 0.0);
  Contaminated data = contaminate(spec);
  CHECK(data.outlier_rows == 100);
  CHECK(data.sample.n() == 1000);

  spec.epsilon = 0.0;
  Contaminated clean = contaminate(spec);
  CHECK(clean.outlier_rows == 0);
  GaussianModel moments = sample_moments(clean.sample);
  CHECK(moments.mean().norm() < 0.15);
  CHECK((moments.cov() - Eigen::Matrix2d::Identity()).norm() < 0.2);

  spec.epsilon = 0.5;
  CHECK_THROWS_WITH_AS(contaminate(spec), doctest::Contains("InvalidSpec"), Error);
  spec.epsilon = -0.01;
  CHECK_THROWS_AS(contaminate(spec), Error);
}

TEST_CASE("deterministic contamination under a fixed seed") {
  ContaminationSpec spec;
  spec.epsilon = 0.05;
  spec.dim = 2;
  spec.n = 200;
  spec.seed = 123;
  spec.true_mean = Eigen::Vector2d(1.0, 1.0);
  spec.outlier_location = Eigen::Vector2d(9.0, 9.0);
  Contaminated a = contaminate(spec);
  Contaminated b = contaminate(spec);
  CHECK((a.sample.points() - b.sample.points()).norm() == 0.0);
}

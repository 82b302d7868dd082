#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "ganlab/error.hpp"
#include "ganlab/gaussian.hpp"
#include "ganlab/rng.hpp"
#include "ganlab/stats.hpp"

using namespace ganlab;

namespace {

Eigen::MatrixXd random_spd(int d, Rng& rng, double ridge = 0.1) {
  Eigen::MatrixXd m = rng.normal_matrix(d, d);
  return m * m.transpose() / d + ridge * Eigen::MatrixXd::Identity(d, d);
}

// Simpson quadrature of the standard normal density over [0, x].
double phi_integral(double x, int panels = 20000) {
  double h = x / panels;
  double sum = normal_pdf(0.0) + normal_pdf(x);
  for (int i = 1; i < panels; ++i) {
    sum += normal_pdf(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("matrix_sqrt on identity and diagonal matrices") {
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(3, 3);
  CHECK((matrix_sqrt(eye) - eye).norm() == doctest::Approx(0.0).epsilon(1e-14));

  Eigen::MatrixXd diag = Eigen::Vector2d(4.0, 9.0).asDiagonal();
  Eigen::MatrixXd root = matrix_sqrt(diag);
  CHECK(root(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(root(1, 1) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(root(0, 1)) < 1e-12);
}

TEST_CASE("matrix_sqrt squaring residual on random SPD input") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::MatrixXd s = random_spd(3, rng);
    Eigen::MatrixXd r = matrix_sqrt(s);
    CHECK((r * r - s).norm() / s.norm() < 1e-8);
    CHECK((r - r.transpose()).norm() < 1e-12);
  }
}

TEST_CASE("matrix_sqrt rejects asymmetric and clearly negative input") {
  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_WITH_AS(matrix_sqrt(asym), doctest::Contains("NotSymmetric"), Error);

  Eigen::MatrixXd neg = Eigen::Vector2d(1.0, -0.5).asDiagonal();
  CHECK_THROWS_AS(matrix_sqrt(neg), Error);

  // Within the clamp band: tiny negative eigenvalues round up to zero.
  Eigen::MatrixXd nearly = Eigen::Vector2d(1.0, -1e-12).asDiagonal();
  Eigen::MatrixXd root = matrix_sqrt(nearly);
  CHECK(root(1, 1) == 0.0);
}

TEST_CASE("matrix_sqrt is Hoelder continuous at scale one") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::MatrixXd a = random_spd(4, rng);
    a /= a.norm();
    Eigen::MatrixXd raw = rng.normal_matrix(4, 4);
    Eigen::MatrixXd e = 0.5 * (raw + raw.transpose());
    double delta = std::pow(10.0, -1.0 - 0.2 * trial / 6);
    Eigen::MatrixXd b = a + delta / e.norm() * e;
    SpectralDecomp db = spectral(0.5 * (b + b.transpose()));
    if (db.values.minCoeff() < 0) continue;  // keep B PSD for the bound
    double lhs = (matrix_sqrt(a) - matrix_sqrt(b)).operatorNorm();
    double rhs = 3.0 * std::sqrt((a - b).operatorNorm());
    CHECK(lhs <= rhs);
  }
}

TEST_CASE("gauss_w2 closed-form cases") {
  GaussianModel std2 = GaussianModel::standard(2);
  CHECK(gauss_w2(std2, std2) == doctest::Approx(0.0).epsilon(1e-12));

  GaussianModel p(Eigen::Vector2d::Zero(), Eigen::Vector2d(4.0, 1.0).asDiagonal());
  GaussianModel q(Eigen::Vector2d::Zero(), Eigen::Vector2d(1.0, 4.0).asDiagonal());
  CHECK(gauss_w2(p, q) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

  Rng rng(3);
  Eigen::MatrixXd cov = random_spd(3, rng);
  Eigen::Vector3d mu(0.3, -0.2, 1.0);
  GaussianModel base(mu, cov);
  Eigen::Vector3d shifted = mu;
  shifted(0) += 1.0;
  GaussianModel moved(shifted, cov);
  CHECK(gauss_w2(base, moved) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gauss_w2 is a metric on random Gaussians") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 2 + trial % 3;
    GaussianModel a(rng.normal_vector(d), random_spd(d, rng));
    GaussianModel b(rng.normal_vector(d), random_spd(d, rng));
    GaussianModel c(rng.normal_vector(d), random_spd(d, rng));
    double ab = gauss_w2(a, b), ba = gauss_w2(b, a);
    double ac = gauss_w2(a, c), cb = gauss_w2(c, b);
    CHECK(ab == ba);                      // symmetric evaluation path
    CHECK(ab <= ac + cb + 1e-8);          // triangle inequality
  }
  GaussianModel a(Eigen::Vector2d(1.0, 2.0), Eigen::Matrix2d::Identity());
  CHECK(gauss_w2(a, a) == 0.0);
}

TEST_CASE("gauss_w2 rejects mismatched dimensions") {
  CHECK_THROWS_WITH_AS(gauss_w2(GaussianModel::standard(2), GaussianModel::standard(3)),
                       doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("pca_truncate closed forms") {
  Eigen::MatrixXd s = Eigen::Vector2d(4.0, 1.0).asDiagonal();
  PcaTruncation t = pca_truncate(s, 1);
  CHECK(t.cov(0, 0) == doctest::Approx(4.0));
  CHECK(t.cov(1, 1) == doctest::Approx(0.0));
  CHECK(t.error == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(5);
  Eigen::MatrixXd full = random_spd(4, rng);
  PcaTruncation whole = pca_truncate(full, 4);
  CHECK((whole.cov - full).norm() < 1e-10);
  CHECK(whole.error == doctest::Approx(0.0));

  CHECK_THROWS_WITH_AS(pca_truncate(full, 0), doctest::Contains("RankOutOfRange"), Error);
  CHECK_THROWS_AS(pca_truncate(full, 5), Error);
}

TEST_CASE("pca_truncate error equals the spectral tail identity") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd s = random_spd(5, rng);
    SpectralDecomp dec = spectral(s);
    for (int r = 1; r <= 5; ++r) {
      double tail = 0.0;
      for (int i = r; i < 5; ++i) tail += dec.values(i);
      CHECK(pca_truncate(s, r).error ==
            doctest::Approx(std::sqrt(tail)).epsilon(1e-10));
    }
  }
}

TEST_CASE("pca_truncate rank-1 error matches a brute-force direction grid") {
  // Oracle: min over unit directions u and scales c >= 0 of
  // || S^{1/2} - c u u^T ||_F, scanned on a spherical grid. The optimal c
  // for fixed u is u^T S^{1/2} u.
  Rng rng(29);
  Eigen::MatrixXd s = random_spd(3, rng);
  Eigen::MatrixXd r = matrix_sqrt(s);
  double base = r.squaredNorm();
  double best = std::numeric_limits<double>::infinity();
  const int nt = 120, np = 240;
  for (int it = 0; it <= nt; ++it) {
    double theta = M_PI * it / nt;
    for (int ip = 0; ip < np; ++ip) {
      double phi = 2 * M_PI * ip / np;
      Eigen::Vector3d u(std::sin(theta) * std::cos(phi),
                        std::sin(theta) * std::sin(phi), std::cos(theta));
      double c = u.dot(r * u);
      best = std::min(best, base - c * c);
    }
  }
  double oracle = std::sqrt(std::max(best, 0.0));
  CHECK(pca_truncate(s, 1).error == doctest::Approx(oracle).epsilon(5e-3));
}

TEST_CASE("gauss_tv closed form and limits") {
  GaussianModel a = GaussianModel::standard(3);
  CHECK(gauss_tv(a, a) == 0.0);

  Eigen::Vector3d far = Eigen::Vector3d::Zero();
  far(0) = 8.0;
  CHECK(gauss_tv(a, GaussianModel(far, Eigen::Matrix3d::Identity())) >= 0.999);

  GaussianModel skewed(Eigen::Vector2d::Zero(), 2.0 * Eigen::Matrix2d::Identity());
  CHECK_THROWS_WITH_AS(gauss_tv(skewed, GaussianModel::standard(2)),
                       doctest::Contains("NonIdentityCovariance"), Error);
}

TEST_CASE("gauss_tv at separation two matches a Monte-Carlo halfspace probe") {
  // The optimal discriminating set between N(mu1, I) and N(mu2, I) is the
  // halfspace through the midpoint; estimate both membership probabilities.
  const int n = 200000;
  Eigen::Vector2d mu1(0.0, 0.0), mu2(2.0, 0.0);
  Eigen::Vector2d v = (mu1 - mu2).normalized();
  Eigen::Vector2d mid = 0.5 * (mu1 + mu2);
  Rng rng(41);
  int hit1 = 0, hit2 = 0;
  for (int i = 0; i < n; ++i) {
    Eigen::Vector2d x1 = mu1 + rng.normal_vector(2);
    Eigen::Vector2d x2 = mu2 + rng.normal_vector(2);
    if (v.dot(x1 - mid) > 0) ++hit1;
    if (v.dot(x2 - mid) > 0) ++hit2;
  }
  double mc = (hit1 - hit2) / static_cast<double>(n);
  GaussianModel a(mu1, Eigen::Matrix2d::Identity());
  GaussianModel b(mu2, Eigen::Matrix2d::Identity());
  CHECK(gauss_tv(a, b) == doctest::Approx(mc).epsilon(0.02));
  CHECK(gauss_tv(a, b) == doctest::Approx(2 * normal_cdf(1.0) - 1).epsilon(1e-12));
}

TEST_CASE("gauss_tukey against quadrature and the admissibility bound") {
  GaussianModel a = GaussianModel::standard(2);
  CHECK(gauss_tukey(a, a) == 0.0);

  Eigen::Vector2d e1(1.0, 0.0);
  GaussianModel b(e1, Eigen::Matrix2d::Identity());
  CHECK(gauss_tukey(a, b) == doctest::Approx(phi_integral(1.0)).epsilon(1e-9));

  // 2 * tukey >= tv over a separation grid (resolution parameter 2).
  for (int i = 0; i <= 100; ++i) {
    double delta = 0.1 * i;
    Eigen::Vector2d mu = Eigen::Vector2d::Zero();
    mu(0) = delta;
    GaussianModel shifted(mu, Eigen::Matrix2d::Identity());
    CHECK(2.0 * gauss_tukey(a, shifted) >= gauss_tv(a, shifted) - 1e-12);
  }
}

TEST_CASE("normal quantile inverts the CDF in both tails") {
  for (double p : {1e-12, 1e-8, 1e-4, 0.1, 0.5, 0.9, 1.0 - 1e-8}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
  }
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
}

TEST_CASE("GaussianModel clamps tiny negative eigenvalues on construction") {
  Eigen::MatrixXd cov = Eigen::Vector2d(1.0, -5e-11).asDiagonal();
  GaussianModel g(Eigen::Vector2d::Zero(), cov);
  SpectralDecomp dec = spectral(g.cov());
  CHECK(dec.values.minCoeff() >= 0.0);

  Eigen::MatrixXd bad = Eigen::Vector2d(1.0, -1e-3).asDiagonal();
  CHECK_THROWS_WITH_AS(GaussianModel(Eigen::Vector2d::Zero(), bad),
                       doctest::Contains("NegativeEigenvalue"), Error);
}

TEST_CASE("spectral decomposition reconstructs and orders") {
  Rng rng(31);
  Eigen::MatrixXd s = random_spd(4, rng);
  SpectralDecomp dec = spectral(s);
  CHECK((dec.reconstruct() - s).norm() / s.norm() < 1e-8);
  CHECK((dec.vectors * dec.vectors.transpose() - Eigen::MatrixXd::Identity(4, 4)).norm() <
        1e-8);
  for (int i = 1; i < 4; ++i) CHECK(dec.values(i - 1) >= dec.values(i));
}

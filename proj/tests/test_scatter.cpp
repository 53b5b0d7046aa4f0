#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ica/rng.hpp"
#include "ica/scatter.hpp"
#include "ica/simulate.hpp"

using namespace ica;

namespace {

Matrix random_full_rank(int p, Rng& rng) {
  Matrix a(p, p);
  do {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) a(i, j) = rng.normal();
  } while (!is_full_rank(a));
  return a;
}

const std::vector<SourceSpec> kSources = {
    {SourceFamily::Laplace}, {SourceFamily::Logistic}, {SourceFamily::Beta33}};

}  // namespace

TEST_CASE("covariance of signed unit vectors") {
  const int p = 3;
  Matrix x(2 * p, p);
  x.setZero();
  for (int i = 0; i < p; ++i) {
    x(i, i) = 1.0;
    x(p + i, i) = -1.0;
  }
  CHECK(cov_scatter(x).isApprox(Matrix::Identity(p, p) / p, 1e-14));
}

TEST_CASE("affine equivariance of both scatters") {
  Rng rng(101);
  const Matrix z = sample_sources(kSources, 500, 7);
  const Matrix a = random_full_rank(3, rng);
  Eigen::RowVectorXd b(3);
  b << 1.0, -2.0, 0.5;
  const Matrix xt = (z * a.transpose()).rowwise() + b;

  const Matrix c1 = cov_scatter(z), c1t = cov_scatter(xt);
  CHECK((c1t - a * c1 * a.transpose()).cwiseAbs().maxCoeff() < 1e-10);

  const Matrix c2 = fourth_moment_scatter(z), c2t = fourth_moment_scatter(xt);
  CHECK((c2t - a * c2 * a.transpose()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("covariance of independent standardized sources approaches identity") {
  const Matrix z = sample_sources(kSources, 100000, 99);
  const Matrix s = cov_scatter(z);
  CHECK((s - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 0.03);
}

TEST_CASE("fourth-moment scatter population diagonal") {
  // diag entry k is (E z_k^4 + p - 1)/(p+2): (1.6, 1.24, 0.8667) here
  const Matrix z = sample_sources(kSources, 100000, 31);
  const Matrix s2 = fourth_moment_scatter(z);
  const double d3 = (7.0 / 3.0 + 2.0) / 5.0;  // 0.8667
  CHECK(std::abs(s2(0, 0) - 1.6) < 0.05);
  CHECK(std::abs(s2(1, 1) - 1.24) < 0.05);
  CHECK(std::abs(s2(2, 2) - d3) < 0.05);
}

TEST_CASE("fourth-moment scatter of normal data is the identity") {
  const std::vector<SourceSpec> normals(3, SourceSpec{SourceFamily::Normal});
  const Matrix z = sample_sources(normals, 100000, 5);
  const Matrix s2 = fourth_moment_scatter(z);
  CHECK((s2 - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("whitening") {
  const Matrix z = sample_sources(kSources, 2000, 13);
  Rng rng(55);
  const Matrix a = random_full_rank(3, rng);
  const Matrix x = z * a.transpose();

  const Whitened w = whiten(x);
  CHECK((cov_scatter(w.data) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);

  const Matrix s1 = cov_scatter(x);
  CHECK((w.whitener * s1 * w.whitener - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(w.whitener.isApprox(w.whitener.transpose(), 1e-12));

  // already-white data comes back unchanged
  const Whitened w2 = whiten(w.data);
  CHECK((w2.data - w.data).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("independence property: off-diagonals shrink at root-n rate") {
  for (int n : {1000, 10000, 100000}) {
    // per off-diagonal entry: within 5/sqrt(n) in at least 95 of 100 runs
    int ok1[3][3] = {}, ok2[3][3] = {};
    for (int r = 0; r < 100; ++r) {
      const Matrix z = sample_sources(kSources, n, mix64(2024, n, r));
      const Matrix s1 = off(cov_scatter(z));
      const Matrix s2 = off(fourth_moment_scatter(z));
      const double bound = 5.0 / std::sqrt(static_cast<double>(n));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          if (std::abs(s1(i, j)) < bound) ++ok1[i][j];
          if (std::abs(s2(i, j)) < bound) ++ok2[i][j];
        }
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        CHECK(ok1[i][j] >= 95);
        CHECK(ok2[i][j] >= 95);
      }
  }
}

TEST_CASE("scatters are invariant under row reordering") {
  Matrix z = sample_sources(kSources, 400, 17);
  Matrix shuffled = z.colwise().reverse();
  CHECK(cov_scatter(z).isApprox(cov_scatter(shuffled), 1e-12));
  CHECK(fourth_moment_scatter(z).isApprox(fourth_moment_scatter(shuffled), 1e-12));
}

TEST_CASE("rank-deficient data is rejected") {
  Matrix x(10, 2);
  for (int i = 0; i < 10; ++i) { x(i, 0) = i; x(i, 1) = 2.0 * i; }
  CHECK_THROWS_AS(cov_scatter(x), std::invalid_argument);
  CHECK_THROWS_AS(fourth_moment_scatter(x), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ica/indices.hpp"
#include "ica/model.hpp"
#include "ica/rng.hpp"

using namespace ica;

namespace {

Matrix random_matrix(int p, Rng& rng) {
  Matrix a(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = rng.normal();
  return a;
}

EquivalenceTransform random_transform(int p, Rng& rng) {
  EquivalenceTransform c = EquivalenceTransform::identity(p);
  for (int i = p - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.uniform() * (i + 1));
    std::swap(c.perm[i], c.perm[j]);
  }
  for (int i = 0; i < p; ++i) {
    c.signs[i] = rng.uniform() < 0.5 ? -1 : 1;
    c.scales[i] = 0.25 + 4.0 * rng.uniform();
  }
  return c;
}

double brute_force_lsap_max(const Matrix& profit) {
  const int p = static_cast<int>(profit.rows());
  std::vector<int> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (int i = 0; i < p; ++i) s += profit(i, perm[i]);
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// same profile construction as the index, optimum by exhaustive enumeration
double brute_force_md(const Matrix& g) {
  const int p = static_cast<int>(g.rows());
  const Matrix sq = g.array().square();
  Matrix gt = sq;
  for (int i = 0; i < p; ++i) gt.row(i) /= gt.row(i).sum();

  std::vector<int> perm(p), best_perm;
  std::iota(perm.begin(), perm.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (int i = 0; i < p; ++i) s += gt(i, perm[i]);
    if (s > best) { best = s; best_perm = perm; }
  } while (std::next_permutation(perm.begin(), perm.end()));

  double acc = 0.0;
  for (int i = 0; i < p; ++i) {
    const double total = sq.row(i).sum();
    acc += (total - sq(i, best_perm[i])) / total;
  }
  return std::sqrt(std::max(acc / (p - 1.0), 0.0));
}

}  // namespace

TEST_CASE("lsap on permutation profits") {
  const int p = 5;
  const auto id = solve_lsap_max(Matrix::Identity(p, p));
  CHECK(id.objective == doctest::Approx(p).epsilon(1e-12));
  for (int i = 0; i < p; ++i) CHECK(id.assignment[i] == i);

  const Matrix rev = Matrix::Identity(p, p).rowwise().reverse();
  const auto r = solve_lsap_max(rev);
  CHECK(r.objective == doctest::Approx(p).epsilon(1e-12));
  for (int i = 0; i < p; ++i) CHECK(r.assignment[i] == p - 1 - i);
}

TEST_CASE("lsap solution is a bijection and objective matches the assignment") {
  Rng rng(311);
  for (int t = 0; t < 50; ++t) {
    const Matrix profit = random_matrix(6, rng);
    const auto sol = solve_lsap_max(profit);
    std::vector<int> seen(6, 0);
    double s = 0.0;
    for (int i = 0; i < 6; ++i) {
      ++seen[sol.assignment[i]];
      s += profit(i, sol.assignment[i]);
    }
    CHECK(*std::min_element(seen.begin(), seen.end()) == 1);
    CHECK(std::abs(sol.objective - s) < 1e-12);
  }
}

TEST_CASE("lsap matches exhaustive enumeration on 1000 random instances") {
  Rng rng(999);
  for (int t = 0; t < 1000; ++t) {
    const Matrix profit = random_matrix(6, rng);
    CHECK(solve_lsap_max(profit).objective == brute_force_lsap_max(profit));
  }
}

TEST_CASE("md index basics") {
  CHECK(md_index(Matrix::Identity(4, 4)) == 0.0);

  Matrix g(2, 2);
  g << 1, 0.5, 0, 1;
  CHECK(md_index(g) == doctest::Approx(std::sqrt(0.2)).epsilon(1e-14));

  CHECK_THROWS_AS(md_index(Matrix::Identity(1, 1)), std::invalid_argument);
  Matrix zr(2, 2);
  zr << 1, 2, 0, 0;
  CHECK_THROWS_AS(md_index(zr), std::invalid_argument);
}

TEST_CASE("md index vanishes exactly on the equivalence orbit of the identity") {
  Rng rng(17);
  for (int p = 2; p <= 6; ++p)
    for (int t = 0; t < 100; ++t)
      CHECK(md_index(materialize(random_transform(p, rng))) < 1e-10);
}

TEST_CASE("md index is one for rank-one gain matrices") {
  Rng rng(23);
  for (int p : {2, 3, 5}) {
    Vector a(p);
    do {
      for (int i = 0; i < p; ++i) a(i) = rng.normal();
    } while (a.cwiseAbs().minCoeff() < 0.1);
    const Matrix g = Vector::Ones(p) * a.transpose();
    CHECK(std::abs(md_index(g) - 1.0) < 1e-10);
  }
}

TEST_CASE("md index grows with the off-diagonal perturbation") {
  Rng rng(29);
  for (int t = 0; t < 50; ++t) {
    Matrix a = random_matrix(4, rng);
    a = a.array().max(-1.0).min(1.0);
    double prev = -1.0;
    for (int step = 0; step <= 10; ++step) {
      const double c = 0.1 * step;
      const double d = md_index(Matrix::Identity(4, 4) + c * off(a));
      CHECK(d >= prev);
      prev = d;
    }
  }
}

TEST_CASE("md index stays in the unit interval") {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    const double d = md_index(random_matrix(2 + t % 5, rng));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("md index is invariant under left equivalence transformations") {
  Rng rng(37);
  for (int t = 0; t < 100; ++t) {
    const int p = 2 + t % 4;
    const Matrix g = random_matrix(p, rng);
    const Matrix cg = materialize(random_transform(p, rng)) * g;
    CHECK(std::abs(md_index(cg) - md_index(g)) < 1e-12);
  }
}

TEST_CASE("md index is not invariant on the mixing side") {
  Matrix g(2, 2);
  g << 1, 0.5, 0, 1;
  EquivalenceTransform c;
  c.perm = {0, 1};
  c.signs = {1, 1};
  c.scales = {3.0, 1.0};
  CHECK(md_index(g * materialize(c)) != md_index(g));
}

TEST_CASE("md via lsap equals md via brute force") {
  Rng rng(41);
  for (int p = 2; p <= 6; ++p)
    for (int t = 0; t < 100; ++t) {
      const Matrix g = random_matrix(p, rng);
      CHECK(md_index(g) == brute_force_md(g));
    }
}

TEST_CASE("column variant of the md index") {
  CHECK(md_index_column_variant(Matrix::Identity(3, 3)) == 0.0);

  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    const Matrix g = random_matrix(3, rng);
    CHECK(md_index_column_variant(g) == md_index(g.transpose()));
  }

  Matrix w(3, 3);
  w << 1, 0.5, 0.2, 0, 1, 0, 0, 0, 1;
  CHECK(md_index_column_variant(w) != md_index(w));
}

TEST_CASE("amari index") {
  CHECK(amari_index(Matrix::Identity(4, 4)) == 0.0);

  // permutation times signs scores zero
  Matrix pj(3, 3);
  pj << 0, -1, 0, 0, 0, 1, -1, 0, 0;
  CHECK(amari_index(pj) == 0.0);

  // invariance under permutation/sign factors on both sides
  Rng rng(47);
  Matrix g = random_matrix(3, rng);
  Matrix p2(3, 3);
  p2 << 0, 0, 1, 1, 0, 0, 0, -1, 0;
  CHECK(std::abs(amari_index(pj * g * p2) - amari_index(g)) < 1e-12);

  // but not under heterogeneous row rescaling
  Matrix d = Matrix::Identity(3, 3);
  d(0, 0) = 5.0;
  CHECK(amari_index(d * g) != amari_index(g));

  CHECK_THROWS_AS(amari_index(Matrix::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("isr index") {
  CHECK(isr_index(Matrix::Identity(4, 4)) == 0.0);

  Matrix g(2, 2);
  g << 1, 0.5, 0, 1;
  CHECK(isr_index(g) == doctest::Approx(0.25).epsilon(1e-14));

  // row-scale invariance: exact for power-of-two scales, tight in general
  Rng rng(53);
  for (int t = 0; t < 20; ++t) {
    const Matrix r = random_matrix(3, rng);
    Matrix d2 = Matrix::Identity(3, 3);
    d2.diagonal() << 0.5, 4.0, 0.125;
    CHECK(isr_index(d2 * r) == isr_index(r));
    Matrix d = Matrix::Identity(3, 3);
    for (int i = 0; i < 3; ++i) d(i, i) = 0.25 + 4.0 * rng.uniform();
    CHECK(std::abs(isr_index(d * r) - isr_index(r)) < 1e-12);
  }
}

TEST_CASE("generalized crosstalking error") {
  Rng rng(59);
  Matrix omega(3, 3);
  do {
    omega = random_matrix(3, rng);
  } while (!is_full_rank(omega));
  const Matrix gamma = omega.inverse();

  CHECK(gce_index(omega, gamma) < 1e-10);
  CHECK(gce_index(omega, materialize(random_transform(3, rng)) * gamma) < 1e-10);

  CHECK_THROWS_AS(gce_index(omega, Matrix::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("gce matches a full-residual brute force at p = 2") {
  Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    Matrix omega(2, 2), gamma(2, 2);
    do { omega = random_matrix(2, rng); } while (!is_full_rank(omega));
    do { gamma = random_matrix(2, rng); } while (!is_full_rank(gamma));

    const Matrix b = gamma.inverse();
    double best = std::numeric_limits<double>::infinity();
    const int perms[2][2] = {{0, 1}, {1, 0}};
    for (const auto& perm : perms) {
      Matrix approx(2, 2);
      for (int j = 0; j < 2; ++j) {
        const int i = perm[j];
        const double c = omega.col(j).dot(b.col(i)) / b.col(i).squaredNorm();
        approx.col(j) = c * b.col(i);
      }
      best = std::min(best, (omega - approx).norm());
    }
    CHECK(std::abs(gce_index(omega, gamma) - best) < 1e-10);
  }
}

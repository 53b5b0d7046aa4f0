#include "ica/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ica {

EquivalenceTransform EquivalenceTransform::identity(int p) {
  EquivalenceTransform c;
  c.perm.resize(p);
  c.signs.assign(p, 1);
  c.scales.assign(p, 1.0);
  for (int i = 0; i < p; ++i) c.perm[i] = i;
  return c;
}

void validate(const EquivalenceTransform& c) {
  const int p = c.dim();
  if (p == 0 || static_cast<int>(c.signs.size()) != p ||
      static_cast<int>(c.scales.size()) != p)
    throw std::invalid_argument("EquivalenceTransform: inconsistent sizes");
  std::vector<char> seen(p, 0);
  for (int i = 0; i < p; ++i) {
    if (c.perm[i] < 0 || c.perm[i] >= p || seen[c.perm[i]])
      throw std::invalid_argument("EquivalenceTransform: perm is not a bijection");
    seen[c.perm[i]] = 1;
    if (c.signs[i] != 1 && c.signs[i] != -1)
      throw std::invalid_argument("EquivalenceTransform: sign must be +-1");
    if (!(c.scales[i] > 0.0) || !std::isfinite(c.scales[i]))
      throw std::invalid_argument("EquivalenceTransform: scale must be positive");
  }
}

Matrix materialize(const EquivalenceTransform& c) {
  validate(c);
  const int p = c.dim();
  Matrix m = Matrix::Zero(p, p);
  for (int i = 0; i < p; ++i) m(i, c.perm[i]) = c.signs[i] * c.scales[i];
  return m;
}

EquivalenceTransform compose(const EquivalenceTransform& a, const EquivalenceTransform& b) {
  validate(a);
  validate(b);
  const int p = a.dim();
  if (b.dim() != p)
    throw std::invalid_argument("compose: dimension mismatch");
  EquivalenceTransform r;
  r.perm.resize(p);
  r.signs.resize(p);
  r.scales.resize(p);
  for (int i = 0; i < p; ++i) {
    const int k = a.perm[i];
    r.perm[i] = b.perm[k];
    r.signs[i] = a.signs[i] * b.signs[k];
    r.scales[i] = a.scales[i] * b.scales[k];
  }
  return r;
}

EquivalenceTransform inverse(const EquivalenceTransform& c) {
  validate(c);
  const int p = c.dim();
  EquivalenceTransform r;
  r.perm.resize(p);
  r.signs.resize(p);
  r.scales.resize(p);
  for (int i = 0; i < p; ++i) {
    r.perm[c.perm[i]] = i;
    r.signs[c.perm[i]] = c.signs[i];
    r.scales[c.perm[i]] = 1.0 / c.scales[i];
  }
  return r;
}

Matrix off(const Matrix& a) {
  check_square(a);
  Matrix r = a;
  r.diagonal().setZero();
  return r;
}

Matrix gain(const Matrix& gamma_hat, const Matrix& omega) {
  check_square(gamma_hat);
  check_square(omega);
  if (gamma_hat.rows() != omega.rows())
    throw std::invalid_argument("gain: dimension mismatch");
  if (!is_full_rank(omega))
    throw std::invalid_argument("gain: omega is rank deficient");
  return gamma_hat * omega;
}

Matrix row_max_standardize(const Matrix& g) {
  check_square(g);
  Matrix r = g;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    // ties broken by the lowest column index
    double best = 0.0;
    for (Eigen::Index j = 0; j < r.cols(); ++j)
      if (std::abs(r(i, j)) > best) best = std::abs(r(i, j));
    if (best == 0.0)
      throw std::invalid_argument("row_max_standardize: all-zero row");
    r.row(i) /= best;
  }
  return r;
}

bool is_full_rank(const Matrix& a, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) > rel_tol * sv(0);
}

void check_square(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument("expected a nonempty square matrix");
  if (!a.allFinite())
    throw std::invalid_argument("matrix has non-finite entries");
}

void check_data(const Matrix& x) {
  if (x.cols() < 2 || x.rows() < x.cols())
    throw std::invalid_argument("data matrix requires n >= p >= 2");
  if (!x.allFinite())
    throw std::invalid_argument("data matrix has non-finite entries");
}

}  // namespace ica

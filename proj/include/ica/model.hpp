#pragma once

#include <Eigen/Dense>
#include <vector>

namespace ica {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// An element C = P*J*D of the permutation/sign/scale group, kept in factored
// form so that group operations are O(p) and exact. Row i of the materialized
// matrix has its only nonzero, signs[i]*scales[i], in column perm[i].
struct EquivalenceTransform {
  std::vector<int> perm;       // bijection on {0,...,p-1}
  std::vector<int> signs;      // each +1 or -1
  std::vector<double> scales;  // each > 0

  int dim() const { return static_cast<int>(perm.size()); }
  static EquivalenceTransform identity(int p);
};

// Throws std::invalid_argument if the factored invariants are violated.
void validate(const EquivalenceTransform& c);

// Dense p x p matrix P*J*D.
Matrix materialize(const EquivalenceTransform& c);

// Factored product: materialize(compose(a, b)) == materialize(a) * materialize(b).
EquivalenceTransform compose(const EquivalenceTransform& a, const EquivalenceTransform& b);

EquivalenceTransform inverse(const EquivalenceTransform& c);

// off(A) = A - diag(A): zeroes the diagonal, keeps everything else.
Matrix off(const Matrix& a);

// Gain matrix G = Gamma * Omega.
Matrix gain(const Matrix& gamma_hat, const Matrix& omega);

// Divides each row by its maximum absolute entry (signs retained), so every
// row's max-absolute entry becomes exactly 1. Throws on an all-zero row.
Matrix row_max_standardize(const Matrix& g);

// Smallest singular value > rel_tol * largest.
bool is_full_rank(const Matrix& a, double rel_tol = 1e-10);

// Validates an n x p observation matrix: n >= p >= 2, all entries finite.
void check_data(const Matrix& x);

void check_square(const Matrix& a);

}  // namespace ica

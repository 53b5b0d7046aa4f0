#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ica/model.hpp"

namespace ica {

enum class Nonlinearity { Pow3, Tanh, Gauss };

Nonlinearity parse_nonlinearity(const std::string& name);
std::string nonlinearity_name(Nonlinearity g);

struct GPair {
  double g;
  double g_prime;
};

GPair nonlinearity_eval(Nonlinearity kind, double z);

struct FobiResult {
  Matrix gamma;          // unmixing estimate, rows sign-fixed
  Vector lambdas;        // eigenvalues of the whitened fourth-moment scatter, descending
  bool eigenvalue_ties;  // some |lambda_i - lambda_j| < 1e-9
};

// Two-scatter simultaneous diagonalization: gamma * S1 * gamma^T = I and
// gamma * S2 * gamma^T = diag(lambdas).
FobiResult fobi(const Matrix& x);

struct FastIcaConfig {
  Nonlinearity nonlinearity = Nonlinearity::Tanh;
  enum class Init { Identity, RandomOrthogonal, Given } init = Init::Identity;
  Matrix init_matrix;        // whitened-space rows; required for Init::Given
  std::uint64_t seed = 0;    // for Init::RandomOrthogonal
  int max_iter = 1000;
  double tol = 1e-8;
};

struct FastIcaResult {
  Matrix gamma;                 // unmixing estimate, rows sign-fixed
  std::vector<int> iterations;  // per extracted row
  std::vector<bool> converged;  // per extracted row; non-convergence is not an error
};

// Deflation-based fastICA. Rows are extracted one at a time in whitened
// coordinates: fixed-point step, Gram-Schmidt against earlier rows, then
// normalization. Stops a row when |1 - |<new, old>|| < tol.
FastIcaResult fastica_deflation(const Matrix& x, const FastIcaConfig& cfg);

// Flips each row so its largest-magnitude entry is positive (ties: lowest
// column index). Stabilizes golden files; all indices are invariant to it.
void fix_row_signs(Matrix& m);

// QR-based random orthogonal matrix, sign-normalized so R has positive diagonal.
Matrix random_orthogonal(int p, std::uint64_t seed);

}  // namespace ica

#pragma once

#include <vector>

#include "ica/model.hpp"

namespace ica {

struct LsapSolution {
  std::vector<int> assignment;  // row i -> column assignment[i], a bijection
  double objective;             // sum of assigned profit entries
};

// Exact maximization of sum_i profit(i, a(i)) over bijections a,
// Jonker-Volgenant style Hungarian method, O(p^3).
LsapSolution solve_lsap_max(const Matrix& profit);

// Minimum distance index
//   D = (p - max_P tr(P * Gt))^{1/2} / sqrt(p-1),  Gt_ij = G_ij^2 / sum_k G_ik^2,
// the permutation maximum computed exactly by LSAP. In [0, 1]; 0 iff the gain
// is a permutation/sign/scale multiple of I. The input is deliberately NOT
// rescaled: row scales are optimized out analytically.
double md_index(const Matrix& g);

// Same index applied after fixing the estimate and transforming the mixing
// side instead; equals md_index of the transpose.
double md_index_column_variant(const Matrix& g);

// (1/p) [ sum_i rowsum|G|/rowmax|G| + sum_j colsum|G|/colmax|G| ] - 2.
// Not invariant under row rescaling.
double amari_index(const Matrix& g);

// sum_i ( sum_j G_ij^2 / max_j G_ij^2 - 1 ). Row-rescaling invariant.
double isr_index(const Matrix& g);

// inf over C of || omega - gamma_hat^{-1} C ||_F. Per-column scale/sign by
// least squares, column assignment by LSAP.
double gce_index(const Matrix& omega, const Matrix& gamma_hat);

}  // namespace ica

#include "ica/indices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ica {

namespace {

// Shortest augmenting path assignment on a cost (minimization) matrix.
std::vector<int> lsap_min(const Matrix& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) { minv[j] = cur; way[j] = j0; }
        if (minv[j] < delta) { delta = minv[j]; j1 = j; }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) { u[p[j]] += delta; v[j] -= delta; }
        else minv[j] -= delta;
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> rowsol(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j]) rowsol[p[j] - 1] = j - 1;
  return rowsol;
}

// Squared-row-normalized profile Gt_ij = G_ij^2 / sum_k G_ik^2.
Matrix squared_row_profile(const Matrix& g) {
  Matrix gt = g.array().square();
  for (Eigen::Index i = 0; i < gt.rows(); ++i) {
    const double s = gt.row(i).sum();
    if (s == 0.0) throw std::invalid_argument("gain matrix has an all-zero row");
    gt.row(i) /= s;
  }
  return gt;
}

}  // namespace

LsapSolution solve_lsap_max(const Matrix& profit) {
  check_square(profit);
  const Matrix cost = (-profit).array() + profit.maxCoeff();
  LsapSolution sol;
  sol.assignment = lsap_min(cost);
  sol.objective = 0.0;
  for (size_t i = 0; i < sol.assignment.size(); ++i)
    sol.objective += profit(static_cast<Eigen::Index>(i), sol.assignment[i]);
  return sol;
}

double md_index(const Matrix& g) {
  check_square(g);
  const Eigen::Index p = g.rows();
  if (p < 2) throw std::invalid_argument("md_index: requires p >= 2");
  const Matrix gt = squared_row_profile(g);
  const LsapSolution sol = solve_lsap_max(gt);
  // p - tr(P Gt) accumulated per row as (row mass off the assignment) / (row
  // mass): algebraically identical, but avoids the cancellation of p - best
  const Matrix sq = g.array().square();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) {
    const double total = sq.row(i).sum();
    acc += (total - sq(i, sol.assignment[i])) / total;
  }
  return std::sqrt(std::max(acc / static_cast<double>(p - 1), 0.0));
}

double md_index_column_variant(const Matrix& g) {
  return md_index(g.transpose());
}

double amari_index(const Matrix& g) {
  check_square(g);
  const Matrix a = g.cwiseAbs();
  const Eigen::Index p = g.rows();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) {
    const double m = a.row(i).maxCoeff();
    if (m == 0.0) throw std::invalid_argument("amari_index: all-zero row");
    acc += a.row(i).sum() / m;
  }
  for (Eigen::Index j = 0; j < p; ++j) {
    const double m = a.col(j).maxCoeff();
    if (m == 0.0) throw std::invalid_argument("amari_index: all-zero column");
    acc += a.col(j).sum() / m;
  }
  return acc / static_cast<double>(p) - 2.0;
}

double isr_index(const Matrix& g) {
  check_square(g);
  const Matrix sq = g.array().square();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    const double m = sq.row(i).maxCoeff();
    if (m == 0.0) throw std::invalid_argument("isr_index: all-zero row");
    acc += sq.row(i).sum() / m - 1.0;
  }
  return acc;
}

double gce_index(const Matrix& omega, const Matrix& gamma_hat) {
  check_square(omega);
  check_square(gamma_hat);
  const Eigen::Index p = omega.rows();
  if (gamma_hat.rows() != p) throw std::invalid_argument("gce_index: dimension mismatch");
  if (!is_full_rank(gamma_hat))
    throw std::invalid_argument("gce_index: gamma_hat is singular");
  const Matrix b = gamma_hat.inverse();
  // Column j of gamma^{-1} C is a free multiple of some column i of b; the
  // optimal multiplier is the least-squares projection coefficient.
  Matrix cost(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < p; ++i) {
      const double dot = omega.col(j).dot(b.col(i));
      cost(j, i) = omega.col(j).squaredNorm() - dot * dot / b.col(i).squaredNorm();
    }
  }
  const std::vector<int> sol = lsap_min(cost);
  double total = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) total += cost(j, sol[j]);
  return std::sqrt(std::max(total, 0.0));
}

}  // namespace ica

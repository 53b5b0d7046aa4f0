#include "ica/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ica/rng.hpp"
#include "ica/scatter.hpp"

namespace ica {

Nonlinearity parse_nonlinearity(const std::string& name) {
  if (name == "pow3") return Nonlinearity::Pow3;
  if (name == "tanh") return Nonlinearity::Tanh;
  if (name == "gauss") return Nonlinearity::Gauss;
  throw std::invalid_argument("unknown nonlinearity: " + name);
}

std::string nonlinearity_name(Nonlinearity g) {
  switch (g) {
    case Nonlinearity::Pow3: return "pow3";
    case Nonlinearity::Tanh: return "tanh";
    case Nonlinearity::Gauss: return "gauss";
  }
  return "?";
}

GPair nonlinearity_eval(Nonlinearity kind, double z) {
  switch (kind) {
    case Nonlinearity::Pow3:
      return {z * z * z, 3.0 * z * z};
    case Nonlinearity::Tanh: {
      const double t = std::tanh(z);
      return {t, 1.0 - t * t};
    }
    case Nonlinearity::Gauss: {
      const double e = std::exp(-0.5 * z * z);
      return {z * e, (1.0 - z * z) * e};
    }
  }
  return {0.0, 0.0};
}

void fix_row_signs(Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Eigen::Index jmax = 0;
    double best = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > best) { best = std::abs(m(i, j)); jmax = j; }
    if (m(i, jmax) < 0.0) m.row(i) = -m.row(i);
  }
}

Matrix random_orthogonal(int p, std::uint64_t seed) {
  Rng rng(seed);
  Matrix a(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < p; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

FobiResult fobi(const Matrix& x) {
  const Whitened w = whiten(x);
  const Eigen::Index n = x.rows(), p = x.cols();
  const Matrix& y = w.data;
  // fourth-moment scatter of whitened data (mean 0, cov I):
  // S2 = mean[ ||y||^2 y y^T ] / (p+2)
  const Vector r2 = y.rowwise().squaredNorm();
  Matrix s2 = (y.transpose() * r2.asDiagonal() * y) /
              (static_cast<double>(n) * static_cast<double>(p + 2));
  s2 = 0.5 * (s2 + s2.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> eig(s2);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("fobi: eigendecomposition failed");

  // descending eigenvalue order
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return eig.eigenvalues()(a) > eig.eigenvalues()(b);
  });

  FobiResult res;
  res.lambdas.resize(p);
  for (Eigen::Index k = 0; k < p; ++k) res.lambdas(k) = eig.eigenvalues()(order[k]);

  // tie detection and a deterministic within-tie ordering: rank tied
  // eigenvectors by the index of their largest-magnitude coordinate
  res.eigenvalue_ties = false;
  Eigen::Index k = 0;
  while (k < p) {
    Eigen::Index e = k + 1;
    while (e < p && std::abs(res.lambdas(e) - res.lambdas(e - 1)) < 1e-9) ++e;
    if (e - k > 1) {
      res.eigenvalue_ties = true;
      std::sort(order.begin() + k, order.begin() + e, [&](int a, int b) {
        Eigen::Index ia, ib;
        eig.eigenvectors().col(a).cwiseAbs().maxCoeff(&ia);
        eig.eigenvectors().col(b).cwiseAbs().maxCoeff(&ib);
        return ia < ib;
      });
    }
    k = e;
  }

  Matrix u(p, p);
  for (Eigen::Index j = 0; j < p; ++j) u.col(j) = eig.eigenvectors().col(order[j]);
  res.gamma = u.transpose() * w.whitener;
  fix_row_signs(res.gamma);
  return res;
}

namespace {
bool init_rows_bad(const Matrix& m, Eigen::Index p) {
  if (m.rows() != p || m.cols() != p) return true;
  return ((m * m.transpose()) - Matrix::Identity(p, p)).cwiseAbs().maxCoeff() > 1e-8;
}
}  // namespace

FastIcaResult fastica_deflation(const Matrix& x, const FastIcaConfig& cfg) {
  if (!(cfg.tol > 0.0) || cfg.max_iter < 1)
    throw std::invalid_argument("fastica: tol must be > 0 and max_iter >= 1");
  const Whitened w = whiten(x);
  const Eigen::Index n = x.rows(), p = x.cols();
  const Matrix& y = w.data;

  Matrix init;
  switch (cfg.init) {
    case FastIcaConfig::Init::Identity:
      init = Matrix::Identity(p, p);
      break;
    case FastIcaConfig::Init::RandomOrthogonal:
      init = random_orthogonal(static_cast<int>(p), cfg.seed);
      break;
    case FastIcaConfig::Init::Given:
      if (init_rows_bad(cfg.init_matrix, p))
        throw std::invalid_argument("fastica: init matrix must be p x p orthogonal");
      init = cfg.init_matrix;
      break;
  }

  Matrix u = Matrix::Zero(p, p);  // extracted rows, whitened space
  FastIcaResult res;
  res.iterations.assign(p, 0);
  res.converged.assign(p, false);

  Eigen::ArrayXd s(n), gv(n), gp(n);
  for (Eigen::Index k = 0; k < p; ++k) {
    const auto step = [&](const Vector& uk) -> Vector {
      s = (y * uk).array();
      switch (cfg.nonlinearity) {
        case Nonlinearity::Pow3:
          gv = s.cube();
          gp = 3.0 * s.square();
          break;
        case Nonlinearity::Tanh:
          gv = s.tanh();
          gp = 1.0 - gv.square();
          break;
        case Nonlinearity::Gauss: {
          const Eigen::ArrayXd e = (-0.5 * s.square()).exp();
          gv = s * e;
          gp = (1.0 - s.square()) * e;
          break;
        }
      }
      Vector unew = (y.transpose() * gv.matrix()) / static_cast<double>(n) -
                    gp.mean() * uk;
      for (Eigen::Index j = 0; j < k; ++j)
        unew -= (unew.dot(u.row(j).transpose())) * u.row(j).transpose();
      const double norm = unew.norm();
      if (!(norm > 0.0) || !unew.allFinite())
        throw std::runtime_error("fastica: NaN during iteration of row " +
                                 std::to_string(k));
      return unew / norm;
    };

    Vector uk = init.row(k).transpose();
    for (int it = 1; it <= cfg.max_iter; ++it) {
      res.iterations[k] = it;
      const Vector unew = step(uk);
      const double align = std::abs(unew.dot(uk));
      uk = unew;
      if (std::abs(1.0 - align) < cfg.tol) {
        res.converged[k] = true;
        break;
      }
    }
    // one extra step once converged tightens the fixed point well past tol,
    // so the estimating equations hold to much better than the stopping rule
    if (res.converged[k]) uk = step(uk);
    u.row(k) = uk.transpose();
  }

  res.gamma = u * w.whitener;
  fix_row_signs(res.gamma);
  return res;
}

}  // namespace ica

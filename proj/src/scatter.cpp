#include "ica/scatter.hpp"

#include <stdexcept>

namespace ica {

namespace {
constexpr double kEigRelTol = 1e-12;
}

Matrix cov_scatter(const Matrix& x) {
  check_data(x);
  const Eigen::Index n = x.rows(), p = x.cols();
  if (n < p + 1) throw std::invalid_argument("cov_scatter: requires n >= p+1");
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Matrix c = x.rowwise() - mean;
  Matrix s = (c.transpose() * c) / static_cast<double>(n);
  check_scatter(s);
  return s;
}

Matrix fourth_moment_scatter(const Matrix& x) {
  check_data(x);
  const Eigen::Index n = x.rows(), p = x.cols();
  const Matrix s1 = cov_scatter(x);
  const Matrix s1inv = s1.llt().solve(Matrix::Identity(p, p));
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Matrix c = x.rowwise() - mean;
  // r2_i = (x_i - xbar)^T S1^{-1} (x_i - xbar); S2 = C^T diag(r2) C / (n(p+2))
  const Vector r2 = ((c * s1inv).array() * c.array()).rowwise().sum();
  Matrix s2 = (c.transpose() * r2.asDiagonal() * c) /
              (static_cast<double>(n) * static_cast<double>(p + 2));
  s2 = 0.5 * (s2 + s2.transpose());  // kill rounding asymmetry
  return s2;
}

Matrix inv_sqrt_sym(const Matrix& s) {
  check_square(s);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  const Vector& ev = eig.eigenvalues();
  const double top = ev(ev.size() - 1);
  if (!(top > 0.0) || ev(0) <= kEigRelTol * top)
    throw std::invalid_argument("inv_sqrt_sym: matrix is numerically singular");
  return eig.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
         eig.eigenvectors().transpose();
}

Whitened whiten(const Matrix& x) {
  const Matrix s1 = cov_scatter(x);
  const Matrix w = inv_sqrt_sym(s1);
  const Eigen::RowVectorXd mean = x.colwise().mean();
  Whitened out;
  out.whitener = w;
  out.data = (x.rowwise() - mean) * w;  // w symmetric
  return out;
}

void check_scatter(const Matrix& s) {
  check_square(s);
  const double scale = s.cwiseAbs().maxCoeff();
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0))
    throw std::invalid_argument("scatter matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s, Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();
  if (!(ev(0) > kEigRelTol * ev(ev.size() - 1)))
    throw std::invalid_argument("scatter matrix is not positive definite");
}

}  // namespace ica

#include "ica/asymptotics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ica/indices.hpp"
#include "ica/quadrature.hpp"
#include "ica/rng.hpp"

namespace ica {

namespace {

double expect(const SourceSpec& src, const std::function<double(double)>& h) {
  return integrate([&](double z) { return h(z) * src.density(z); },
                   src.support_lo(), src.support_hi(), 1e-8);
}

}  // namespace

NonlinearityMoments compute_moments(Nonlinearity kind, const SourceSpec& source) {
  NonlinearityMoments m;
  m.mu = expect(source, [&](double z) { return nonlinearity_eval(kind, z).g; });
  m.lambda = expect(source, [&](double z) { return nonlinearity_eval(kind, z).g * z; });
  m.tau = expect(source, [&](double z) { return nonlinearity_eval(kind, z).g_prime * z; });
  m.delta = expect(source, [&](double z) { return nonlinearity_eval(kind, z).g_prime; });
  return m;
}

double source_fourth_moment(const SourceSpec& source) {
  return expect(source, [](double z) { return z * z * z * z; });
}

double asv_offdiag_base(Nonlinearity kind, const SourceSpec& source) {
  const NonlinearityMoments m = compute_moments(kind, source);
  if (std::abs(m.lambda - m.delta) < 1e-6)
    throw std::invalid_argument("asv_offdiag_base: lambda == delta for source " +
                                source.name());
  const double num = expect(source, [&](double z) {
    const double r = nonlinearity_eval(kind, z).g - m.mu - m.lambda * z;
    return r * r;
  });
  return num / ((m.lambda - m.delta) * (m.lambda - m.delta));
}

AsvMatrix fastica_asv(const std::vector<SourceSpec>& sources, Nonlinearity kind) {
  const int p = static_cast<int>(sources.size());
  if (p < 2) throw std::invalid_argument("fastica_asv: need at least 2 sources");
  // lambda != delta required for every extraction but the last
  std::vector<double> base(p, 0.0);
  for (int k = 0; k < p; ++k) {
    if (k < p - 1) base[k] = asv_offdiag_base(kind, sources[k]);
  }
  AsvMatrix out;
  out.sources = sources;
  out.values.resize(p, p);
  for (int k = 0; k < p; ++k) {
    out.values(k, k) = (source_fourth_moment(sources[k]) - 1.0) / 4.0;
    for (int l = 0; l < p; ++l) {
      if (l == k) continue;
      const int m = std::min(k, l);
      out.values(k, l) = base[m] + (l > k ? 1.0 : 0.0);
    }
  }
  return out;
}

double offdiag_trace_target(const AsvMatrix& asv) {
  return asv.values.sum() - asv.values.trace();
}

AsvMatrix empirical_asv(const std::vector<Matrix>& estimates, int n) {
  if (estimates.size() < 2)
    throw std::invalid_argument("empirical_asv: need at least 2 replications");
  const Eigen::Index p = estimates.front().rows();
  Matrix sum = Matrix::Zero(p, p), sumsq = Matrix::Zero(p, p);
  for (const Matrix& g : estimates) {
    check_square(g);
    if (g.rows() != p) throw std::invalid_argument("empirical_asv: mixed dimensions");
    // nearest-to-identity alignment: squared-row-normalized profile, LSAP,
    // then sign per row so the matched diagonal entry is positive
    Matrix gt = g.array().square();
    for (Eigen::Index i = 0; i < p; ++i) gt.row(i) /= gt.row(i).sum();
    const LsapSolution sol = solve_lsap_max(gt);
    Matrix aligned(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
      const int target = sol.assignment[i];
      aligned.row(target) = g.row(i) * (g(i, target) < 0.0 ? -1.0 : 1.0);
    }
    const Matrix dev = aligned - Matrix::Identity(p, p);
    sum += dev;
    sumsq += dev.cwiseProduct(dev);
  }
  const double r = static_cast<double>(estimates.size());
  const Matrix var = (sumsq - sum.cwiseProduct(sum) / r) / r;
  AsvMatrix out;
  // transpose to the printed-table orientation used by fastica_asv
  out.values = static_cast<double>(n) * var.transpose();
  return out;
}

double MixtureChiSquare::mean() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

MixtureChiSquare md_limit_mixture(const Matrix& asv_cov) {
  check_square(asv_cov);
  const Eigen::Index p2 = asv_cov.rows();
  const Eigen::Index p = static_cast<Eigen::Index>(std::lround(std::sqrt(double(p2))));
  if (p * p != p2)
    throw std::invalid_argument("md_limit_mixture: dimension is not a perfect square");
  const double scale = std::max(asv_cov.cwiseAbs().maxCoeff(), 1.0);
  if ((asv_cov - asv_cov.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::invalid_argument("md_limit_mixture: covariance is not symmetric");

  // (I - D_pp) zeroes the rows/columns belonging to diagonal coordinates of
  // vec(Gamma); in column-major vec those are the indices i + p*i.
  Matrix proj = 0.5 * (asv_cov + asv_cov.transpose());
  for (Eigen::Index i = 0; i < p; ++i) {
    proj.row(i + p * i).setZero();
    proj.col(i + p * i).setZero();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(proj, Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();
  const double top = std::max(ev(p2 - 1), 0.0);
  if (ev(0) < -1e-8 * std::max(top, 1.0))
    throw std::invalid_argument("md_limit_mixture: covariance is not PSD");
  MixtureChiSquare m;
  for (Eigen::Index i = p2 - 1; i >= 0; --i)
    if (ev(i) > 1e-10 * std::max(top, 1e-300)) m.weights.push_back(ev(i));
  return m;
}

std::vector<double> sample_mixture(const MixtureChiSquare& m, int count,
                                   std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_mixture: count >= 1 required");
  Rng rng(seed);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    double acc = 0.0;
    for (double w : m.weights) {
      const double z = rng.normal();
      acc += w * z * z;
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace ica

#pragma once

#include <cstdint>
#include <vector>

#include "ica/estimators.hpp"
#include "ica/model.hpp"
#include "ica/sources.hpp"

namespace ica {

// Moment functionals of a nonlinearity g at a standardized source z:
//   mu = E g(z),  lambda = E g(z) z,  tau = E g'(z) z,  delta = E g'(z).
// The expansions require lambda != delta for every source but the last.
struct NonlinearityMoments {
  double mu, lambda, tau, delta;
};

NonlinearityMoments compute_moments(Nonlinearity kind, const SourceSpec& source);

// E z^4 by quadrature.
double source_fourth_moment(const SourceSpec& source);

// E[(g(z) - mu - lambda z)^2] / (lambda - delta)^2, the variance driver of
// the off-diagonal expansion for the source in question.
double asv_offdiag_base(Nonlinearity kind, const SourceSpec& source);

// Matrix of limiting variances, indexed the way the reference tables print
// them: entry (k, l) is the limiting variance of sqrt(n)(Gamma - I)_{lk} in
// the canonical model. Diagonal (k,k) = (E z_k^4 - 1)/4; off-diagonal
// (k,l) = base(source min(k,l)) + [l > k]. The off-diagonal trace and the
// diagonal are unaffected by the orientation.
struct AsvMatrix {
  Matrix values;
  std::vector<SourceSpec> sources;  // may be empty for empirical estimates
};

// Closed-form ASV of deflation-based fastICA for sources in extraction order.
// Throws if lambda_k == delta_k (within 1e-6) for some k < p.
AsvMatrix fastica_asv(const std::vector<SourceSpec>& sources, Nonlinearity kind);

// Sum of the off-diagonal entries: the limiting mean of n(p-1)*D^2.
double offdiag_trace_target(const AsvMatrix& asv);

// Entrywise variance of sqrt(n)(Gamma - I) across replications from the
// canonical model (Omega = I), after aligning each estimate to the identity
// (LSAP on squared-row-normalized entries, then a sign flip per row). The
// result uses the same orientation as fastica_asv.
AsvMatrix empirical_asv(const std::vector<Matrix>& estimates, int n);

// The law sum_i weights[i] * chi^2_1(i).
struct MixtureChiSquare {
  std::vector<double> weights;  // all > 0
  double mean() const;
};

// Nonzero eigenvalues of (I - D_pp) Sigma (I - D_pp) where D_pp projects onto
// the diagonal coordinates of vec(Gamma). Sigma is the p^2 x p^2 asymptotic
// covariance of sqrt(n) vec(Gamma - I); n(p-1) D^2 then converges to the
// mixture.
MixtureChiSquare md_limit_mixture(const Matrix& asv_cov);

std::vector<double> sample_mixture(const MixtureChiSquare& m, int count,
                                   std::uint64_t seed);

}  // namespace ica

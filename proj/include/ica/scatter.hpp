#pragma once

#include "ica/model.hpp"

namespace ica {

// Sample covariance with divisor n (the functional at the empirical cdf).
// Throws if the result is not positive definite.
Matrix cov_scatter(const Matrix& x);

// Fourth-moment scatter:
//   (1/(p+2)) * mean_i [ (x_i - xbar)(x_i - xbar)^T S1^{-1} (x_i - xbar)(x_i - xbar)^T ]
Matrix fourth_moment_scatter(const Matrix& x);

// Symmetric PD inverse square root via eigendecomposition. Eigenvalues below
// 1e-12 * max are treated as singular.
Matrix inv_sqrt_sym(const Matrix& s);

struct Whitened {
  Matrix data;      // rows y_i = S1^{-1/2} (x_i - xbar)
  Matrix whitener;  // S1^{-1/2}, symmetric
};

Whitened whiten(const Matrix& x);

void check_scatter(const Matrix& s);  // symmetric PD

}  // namespace ica

#pragma once

#include <functional>

namespace ica {

// Adaptive Gauss-Kronrod (G7/K15) integration over [a, b] with interval
// bisection. Stops when the summed K15-G7 error estimate is below abs_tol.
// Throws std::runtime_error on non-convergence.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-8);

}  // namespace ica

#pragma once

#include <functional>

namespace nlse {

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
/// Throws QuadratureFailure on non-finite values or exhausted refinement.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int max_depth = 48);

}  // namespace nlse

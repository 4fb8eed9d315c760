#pragma once

#include <functional>

namespace koplab {

/// Adaptive Simpson quadrature on [a, b]. Throws QuadratureFailure when the
/// recursion depth is exhausted before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 48);

} // namespace koplab

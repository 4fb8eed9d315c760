#pragma once

#include <vector>

#include "koplab/errors.hpp"

namespace koplab {

struct RateFit {
    double slope = 0.0;      // fitted exponent of y ~ C x^slope
    double intercept = 0.0;  // log C
    double ci95 = 0.0;       // half-width of the 95% interval on the slope
    double r2 = 0.0;
};

/// Least-squares power-law fit on log-log axes. The confidence interval uses
/// the Student t quantile with n - 2 degrees of freedom. Throws DegenerateFit
/// for fewer than three points, non-positive data, or collapsed abscissae.
RateFit fit_rate(const std::vector<double>& x, const std::vector<double>& y);

} // namespace koplab

#include "koplab/rate.hpp"

#include <cmath>
#include <cstddef>

namespace koplab {
namespace {

// Two-sided 97.5% Student t quantiles, df = 1..30; normal tail beyond.
constexpr double kT975[] = {
    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
    2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
    2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};

double t_quantile_975(std::size_t df) {
    if (df == 0) return 0.0;
    if (df <= 30) return kT975[df - 1];
    return 1.96;
}

} // namespace

RateFit fit_rate(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size())
        throw Error(ErrorCode::SizeMismatch, "fit_rate: length mismatch");
    if (n < 3)
        throw Error(ErrorCode::DegenerateFit, "fit_rate: need at least 3 points");

    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0) || !(y[i] > 0))
            throw Error(ErrorCode::DegenerateFit,
                        "fit_rate: data must be strictly positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }

    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (!(sxx > 0))
        throw Error(ErrorCode::DegenerateFit, "fit_rate: abscissae collapsed");

    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    const double ss_res = syy - fit.slope * sxy;
    fit.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    const double var =
        std::max(0.0, ss_res) / static_cast<double>(n - 2) / sxx;
    fit.ci95 = t_quantile_975(n - 2) * std::sqrt(var);
    return fit;
}

} // namespace koplab

#include "koplab/params.hpp"

#include <algorithm>
#include <cmath>

namespace koplab {

FluidParams make_params(double mu, double lambda, double kappa, double p,
                        double gamma) {
    if (!(mu > 0))
        throw Error(ErrorCode::ParameterOutOfRange, "mu must be > 0");
    if (!(2 * mu + lambda > 0))
        throw Error(ErrorCode::ParameterOutOfRange,
                    "nu = lambda + 2 mu must be > 0");
    if (!(kappa > 0))
        throw Error(ErrorCode::ParameterOutOfRange, "kappa must be > 0");
    if (!(p > 0))
        throw Error(ErrorCode::ParameterOutOfRange, "p must be > 0");
    if (!(gamma > 1))
        throw Error(ErrorCode::ParameterOutOfRange, "gamma must be > 1");

    FluidParams fp;
    fp.mu = mu;
    fp.lambda = lambda;
    fp.kappa = kappa;
    fp.p = p;
    fp.gamma = gamma;
    fp.nu = lambda + 2 * mu;
    fp.nu0 = std::min(mu, fp.nu);
    fp.M = fp.nu * fp.nu / (4 * kappa);
    return fp;
}

double coeff_K(double q, const FluidParams& params) {
    if (!(q > -1))
        throw Error(ErrorCode::DomainError, "coeff_K requires q > -1");
    return params.p * (1.0 - std::pow(1.0 + q, params.gamma - 2.0));
}

double coeff_I(double q) {
    if (!(q > -1))
        throw Error(ErrorCode::DomainError, "coeff_I requires q > -1");
    return q / (q + 1.0);
}

} // namespace koplab

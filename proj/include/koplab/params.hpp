#pragma once

#include "koplab/errors.hpp"

namespace koplab {

/// Fluid coefficients of the compressible system, with the derived
/// quantities nu = lambda + 2 mu, nu0 = min(mu, nu) and M = nu^2/(4 kappa).
/// Immutable after construction.
struct FluidParams {
    double mu = 0;      // shear viscosity, > 0
    double lambda = 0;  // second viscosity
    double kappa = 0;   // capillary coefficient, > 0
    double p = 0;       // pressure slope P'(1), > 0
    double gamma = 0;   // adiabatic exponent, > 1

    double nu = 0;   // lambda + 2 mu
    double nu0 = 0;  // min(mu, nu)
    double M = 0;    // nu^2 / (4 kappa)
};

/// Order-parameter coupling strength; epsilon is normalized to 1.
struct CouplingAlpha {
    double alpha;

    explicit CouplingAlpha(double a) : alpha(a) {
        if (!(a > 0))
            throw Error(ErrorCode::ParameterOutOfRange, "alpha must be > 0");
    }
};

FluidParams make_params(double mu, double lambda, double kappa, double p,
                        double gamma = 1.4);

/// K(q) = P'(1) - P'(1+q)/(1+q) for the gamma-law pressure P = (p/gamma) rho^gamma,
/// i.e. K(q) = p (1 - (1+q)^(gamma-2)).
double coeff_K(double q, const FluidParams& params);

/// I(q) = q/(q+1).
double coeff_I(double q);

} // namespace koplab

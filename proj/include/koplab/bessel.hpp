#pragma once

#include <vector>

namespace koplab {

/// Modified Bessel function of the second kind, evaluated from the integral
/// representation K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt with
/// step-refined trapezoid quadrature. Requires x > 0.
double bessel_K(double nu, double x);

/// Bessel function of the first kind for integer or half-integer index
/// nu >= -1/2 (the only indices the radial transforms need).
double bessel_J(double nu, double x);

/// Interaction potential phi in physical space for d in {1,2,3}:
/// phi(x) = (2 pi)^(-d/2) |x|^(1-d/2) K_{d/2-1}(|x|), normalized so that
/// its Fourier transform is (1+|xi|^2)^(-1).
double kernel_phi(int d, double x);

/// Fourier transform of phi: 1/(1+|xi|^2).
double kernel_phi_hat(int d, double xi_norm);

/// Checks the Fourier pair by radial (Hankel-type) quadrature: returns the
/// maximum over the samples of
///   |(2 pi)^(d/2) xi^(1-d/2) int_0^inf J_{d/2-1}(xi r) phi0(r) r^(d/2) dr
///    - 1/(1+xi^2)|,
/// where xi = 0 falls back to direct integration of phi over R^d.
double hankel_check(int d, const std::vector<double>& xi_samples);

} // namespace koplab

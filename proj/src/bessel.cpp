#include "koplab/bessel.hpp"

#include <cmath>

#include "koplab/errors.hpp"
#include "koplab/quadrature.hpp"

namespace koplab {
namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_near_integer(double v) { return std::abs(v - std::round(v)) < 1e-12; }

// Trapezoid on [0, T] for f(t) = exp(-x cosh t) cosh(nu t). The integrand is
// even in t and decays double-exponentially, so step refinement converges
// geometrically.
double bessel_K_integral(double nu, double x) {
    double T = 1.0;
    while (x * std::cosh(T) - std::abs(nu) * T < 760.0 && T < 60.0) T += 0.5;

    auto f = [&](double t) {
        double e = -x * std::cosh(t) + std::log(std::cosh(nu * t));
        return e < -745.0 ? 0.0 : std::exp(e);
    };

    double h = 0.25;
    double val = 0.0;
    double prev = 0.0;
    for (int iter = 0; iter < 14; ++iter) {
        const long n = std::lround(std::ceil(T / h));
        double s = 0.5 * f(0.0);
        for (long k = 1; k <= n; ++k) s += f(k * h);
        val = s * h;
        if (iter > 1 && std::abs(val - prev) <= 1e-14 * std::abs(val)) return val;
        prev = val;
        h *= 0.5;
    }
    return val;
}

// J_n for integer n via the cosine representation; trapezoid on a periodic
// analytic integrand converges exponentially in the point count.
double bessel_J_integer(int n, double x) {
    long m = 64;
    const long m_max = 1L << 22;
    double prev = 0.0;
    for (;;) {
        double s = 0.0;
        const double h = kPi / static_cast<double>(m);
        for (long k = 0; k < m; ++k) {
            const double theta = (k + 0.5) * h;  // midpoint, avoids endpoints
            s += std::cos(n * theta - x * std::sin(theta));
        }
        const double val = s * h / kPi;
        if (m > 64 && std::abs(val - prev) <= 1e-14 * (1.0 + std::abs(val)))
            return val;
        prev = val;
        if (m >= m_max) return val;
        m *= 2;
    }
}

double bessel_J_half_integer(double nu, double x) {
    // J_{-1/2}, J_{1/2} in closed form, then upward recurrence. Only small
    // indices are ever requested (nu = d/2 - 1 and neighbors).
    const double c = std::sqrt(2.0 / (kPi * x));
    double jm = c * std::cos(x);  // J_{-1/2}
    double jp = c * std::sin(x);  // J_{1/2}
    if (nu == -0.5) return jm;
    double order = 0.5;
    while (order < nu - 0.25) {
        const double jn = (2.0 * order / x) * jp - jm;
        jm = jp;
        jp = jn;
        order += 1.0;
    }
    return jp;
}

} // namespace

double bessel_K(double nu, double x) {
    if (!(x > 0))
        throw Error(ErrorCode::DomainError, "bessel_K requires x > 0");
    nu = std::abs(nu);  // K_{-nu} = K_nu
    if (nu == 0.5)
        return std::sqrt(kPi / 2.0) * std::exp(-x) / std::sqrt(x);
    return bessel_K_integral(nu, x);
}

double bessel_J(double nu, double x) {
    if (!(nu >= -0.5))
        throw Error(ErrorCode::DomainError, "bessel_J requires nu >= -1/2");
    if (!(x >= 0))
        throw Error(ErrorCode::DomainError, "bessel_J requires x >= 0");
    if (is_near_integer(nu)) {
        if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
        return bessel_J_integer(static_cast<int>(std::lround(nu)), x);
    }
    if (is_near_integer(nu - 0.5)) {
        if (x == 0.0)
            throw Error(ErrorCode::DomainError,
                        "bessel_J: half-integer index undefined at x = 0");
        return bessel_J_half_integer(nu, x);
    }
    throw Error(ErrorCode::DomainError,
                "bessel_J supports integer and half-integer indices only");
}

double kernel_phi(int d, double x) {
    if (d < 1 || d > 3)
        throw Error(ErrorCode::DomainError, "kernel_phi requires d in {1,2,3}");
    if (!(x > 0))
        throw Error(ErrorCode::DomainError, "kernel_phi requires x > 0");
    const double cd = std::pow(2.0 * kPi, -0.5 * d);
    return cd * std::pow(x, 1.0 - 0.5 * d) * bessel_K(0.5 * d - 1.0, x);
}

double kernel_phi_hat(int /*d*/, double xi_norm) {
    return 1.0 / (1.0 + xi_norm * xi_norm);
}

double hankel_check(int d, const std::vector<double>& xi_samples) {
    if (d < 1 || d > 3)
        throw Error(ErrorCode::DomainError, "hankel_check requires d in {1,2,3}");
    const double nu = 0.5 * d - 1.0;
    const double r_lo = 1e-12;
    const double r_hi = 45.0;
    const double sphere_area = (d == 1) ? 2.0 : (d == 2) ? 2.0 * kPi : 4.0 * kPi;

    double max_err = 0.0;
    for (double xi : xi_samples) {
        double transform;
        if (xi == 0.0) {
            auto f = [&](double r) {
                return kernel_phi(d, r) * std::pow(r, d - 1.0);
            };
            transform = sphere_area * adaptive_simpson(f, r_lo, r_hi, 2e-11);
        } else {
            auto f = [&](double r) {
                return bessel_J(nu, xi * r) * kernel_phi(d, r) *
                       std::pow(r, 0.5 * d);
            };
            const double radial = adaptive_simpson(f, r_lo, r_hi, 2e-11);
            transform =
                std::pow(2.0 * kPi, 0.5 * d) * std::pow(xi, 1.0 - 0.5 * d) * radial;
        }
        max_err = std::max(max_err,
                           std::abs(transform - kernel_phi_hat(d, xi)));
    }
    return max_err;
}

} // namespace koplab

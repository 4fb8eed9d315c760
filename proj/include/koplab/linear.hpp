#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "koplab/params.hpp"

namespace koplab {

using Cplx = std::complex<double>;

/// g_alpha(x) = 1 - (4p/nu^2)/x - (alpha^2/M)/(x + alpha^2); strictly
/// increasing on (0, inf) with limit 1, zero at the discriminant threshold.
double g_alpha(double x, const FluidParams& params, const CouplingAlpha& alpha);

/// Acoustic pressure symbol p + kappa x / (1 + x/alpha^2), x = |xi|^2.
double acoustic_sigma(double x, const FluidParams& params,
                      const CouplingAlpha& alpha);

/// Local (Korteweg) counterpart p + kappa x.
double acoustic_sigma_local(double x, const FluidParams& params);

/// Unique positive root of g_alpha(x) = beta, by the closed form. beta in [0, 1).
double threshold_x_beta(double beta, const FluidParams& params,
                        const CouplingAlpha& alpha);

/// Same root by bisection (independent route; used for cross-checks).
double threshold_x_beta_bisect(double beta, const FluidParams& params,
                               const CouplingAlpha& alpha);

struct Thresholds {
    double x_alpha;  // g_alpha = 0
    double y_alpha;  // g_alpha = 1/2 (M <= 1) or 1 - 1/(2M) (M >= 1)
    double m;        // sqrt(g_alpha(y_alpha))
    double M;        // nu^2 / (4 kappa)
};

Thresholds threshold_y(const FluidParams& params, const CouplingAlpha& alpha);

enum class Regime { Low, Transition, High };

/// Per-frequency eigen-data of the 2x2 acoustic block
/// A(xi) = [[0, -|xi|], [|xi| sigma, -nu |xi|^2]].
struct LinearModes {
    double xi_norm2;
    Regime regime;
    double S;  // sqrt(-g), valid when the discriminant is negative
    double R;  // sqrt(g), valid when the discriminant is positive
    Cplx lambda_plus;   // -(nu |xi|^2 / 2)(1 + iS) resp. (1 + R)
    Cplx lambda_minus;
    double m;  // sqrt(g_alpha(y_alpha)) of the parameter set
};

LinearModes modes(double xi_norm2, const FluidParams& params,
                  const CouplingAlpha& alpha);

/// Exact flow exp(t A(xi)) applied to (q0, v0). `local` selects the Korteweg
/// symbol p + kappa |xi|^2 instead of the order-parameter one.
std::pair<Cplx, Cplx> semigroup_apply(Cplx q0_hat, Cplx v0_hat, double xi_norm,
                                      double t, const FluidParams& params,
                                      const CouplingAlpha& alpha,
                                      bool local = false);

/// Decoupled heat flow for the solenoidal part: w0 * exp(-mu |xi|^2 t).
Cplx heat_apply(Cplx w0_hat, double xi_norm2, double t, double mu);

/// Matrix exponential of a 2x2 complex matrix by scaling and squaring with a
/// Taylor core. Lives in the library as the degenerate-regime fallback; the
/// test suites use it as the independent oracle as well.
void expm_2x2(const Cplx a[2][2], Cplx out[2][2]);

struct EnvelopeRow {
    double xi_norm2;
    Regime regime;
    double s_or_r;
    double re_lambda_plus;
    double re_lambda_minus;
    double im_lambda_plus;
    double rate_measured;  // log-slope of ||exp(tA)||_2 over an adapted window
    double rate_bound;     // regime-specific lower bound on the decay rate
};

/// Measured decay exponent per frequency: oscillatory modes are sampled one
/// full period apart (the envelope rate is then exact), real modes over a
/// window long enough for the slow eigenvalue to dominate.
std::vector<EnvelopeRow> envelope_report(const FluidParams& params,
                                         const CouplingAlpha& alpha,
                                         const std::vector<double>& xi_grid);

} // namespace koplab

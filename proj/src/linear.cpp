#include "koplab/linear.hpp"

#include <algorithm>
#include <cmath>

namespace koplab {
namespace {

// sinh(z)/z, stable near z = 0.
Cplx sinch(Cplx z) {
    if (std::abs(z) < 1e-4) {
        const Cplx z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}

void mat_mul(const Cplx a[2][2], const Cplx b[2][2], Cplx out[2][2]) {
    Cplx tmp[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            tmp[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = tmp[i][j];
}

double mat_norm_inf(const Cplx a[2][2]) {
    return std::max(std::abs(a[0][0]) + std::abs(a[0][1]),
                    std::abs(a[1][0]) + std::abs(a[1][1]));
}

// Operator 2-norm (largest singular value) of a 2x2 complex matrix.
double mat_norm_2(const Cplx a[2][2]) {
    // Eigenvalues of A^* A via trace/determinant.
    double g00 = 0, g01r = 0, g01i = 0, g11 = 0;
    g00 = std::norm(a[0][0]) + std::norm(a[1][0]);
    g11 = std::norm(a[0][1]) + std::norm(a[1][1]);
    const Cplx g01 = std::conj(a[0][0]) * a[0][1] + std::conj(a[1][0]) * a[1][1];
    g01r = g01.real();
    g01i = g01.imag();
    const double tr = g00 + g11;
    const double det = g00 * g11 - (g01r * g01r + g01i * g01i);
    const double disc = std::max(0.0, tr * tr / 4.0 - det);
    return std::sqrt(std::max(0.0, tr / 2.0 + std::sqrt(disc)));
}

void acoustic_matrix(double xi_norm, double sigma, double nu, Cplx a[2][2]) {
    a[0][0] = 0.0;
    a[0][1] = -xi_norm;
    a[1][0] = xi_norm * sigma;
    a[1][1] = -nu * xi_norm * xi_norm;
}

} // namespace

double acoustic_sigma(double x, const FluidParams& params,
                      const CouplingAlpha& alpha) {
    const double a2 = alpha.alpha * alpha.alpha;
    return params.p + params.kappa * x / (1.0 + x / a2);
}

double acoustic_sigma_local(double x, const FluidParams& params) {
    return params.p + params.kappa * x;
}

double g_alpha(double x, const FluidParams& params, const CouplingAlpha& alpha) {
    if (!(x > 0))
        throw Error(ErrorCode::DomainError, "g_alpha requires x > 0");
    const double a2 = alpha.alpha * alpha.alpha;
    return 1.0 - (4.0 * params.p / (params.nu * params.nu)) / x -
           (a2 / params.M) / (x + a2);
}

double threshold_x_beta(double beta, const FluidParams& params,
                        const CouplingAlpha& alpha) {
    if (!(beta >= 0.0 && beta < 1.0))
        throw Error(ErrorCode::DomainError, "threshold_x_beta: beta in [0,1)");
    const double a2 = alpha.alpha * alpha.alpha;
    const double nu2 = params.nu * params.nu;
    const double ob = 1.0 / (1.0 - beta);
    const double A = (a2 / params.M) * (params.M - ob) - ob * 4.0 * params.p / nu2;
    return 0.5 * (-A + std::sqrt(16.0 * params.p * ob / nu2 * a2 + A * A));
}

double threshold_x_beta_bisect(double beta, const FluidParams& params,
                               const CouplingAlpha& alpha) {
    if (!(beta >= 0.0 && beta < 1.0))
        throw Error(ErrorCode::DomainError, "threshold_x_beta: beta in [0,1)");
    double lo = 1e-8;
    int guard = 0;
    while (g_alpha(lo, params, alpha) > beta) {
        lo *= 0.5;
        if (++guard > 2000)
            throw Error(ErrorCode::ConvergenceFailure, "bisection bracketing failed");
    }
    double hi = std::max(1.0, alpha.alpha * alpha.alpha);
    guard = 0;
    while (g_alpha(hi, params, alpha) < beta) {
        hi *= 2.0;
        if (++guard > 2000)
            throw Error(ErrorCode::ConvergenceFailure, "bisection bracketing failed");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g_alpha(mid, params, alpha) < beta)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Thresholds threshold_y(const FluidParams& params, const CouplingAlpha& alpha) {
    Thresholds th;
    th.M = params.M;
    th.x_alpha = threshold_x_beta(0.0, params, alpha);
    const double beta = params.M <= 1.0 ? 0.5 : 1.0 - 1.0 / (2.0 * params.M);
    th.y_alpha = threshold_x_beta(beta, params, alpha);
    th.m = std::sqrt(beta);
    return th;
}

LinearModes modes(double xi_norm2, const FluidParams& params,
                  const CouplingAlpha& alpha) {
    if (!(xi_norm2 > 0))
        throw Error(ErrorCode::DomainError, "modes requires |xi|^2 > 0");
    const Thresholds th = threshold_y(params, alpha);
    const double g = g_alpha(xi_norm2, params, alpha);

    LinearModes lm;
    lm.xi_norm2 = xi_norm2;
    lm.m = th.m;
    lm.S = g < 0 ? std::sqrt(-g) : 0.0;
    lm.R = g > 0 ? std::sqrt(g) : 0.0;
    lm.regime = xi_norm2 < th.x_alpha
                    ? Regime::Low
                    : (xi_norm2 < th.y_alpha ? Regime::Transition : Regime::High);

    const double half = 0.5 * params.nu * xi_norm2;
    if (g < 0) {
        lm.lambda_plus = Cplx(-half, -half * lm.S);
        lm.lambda_minus = Cplx(-half, half * lm.S);
    } else {
        lm.lambda_plus = Cplx(-half * (1.0 + lm.R), 0.0);
        lm.lambda_minus = Cplx(-half * (1.0 - lm.R), 0.0);
    }
    return lm;
}

void expm_2x2(const Cplx a[2][2], Cplx out[2][2]) {
    // Scaling and squaring with a Taylor core.
    const double norm = mat_norm_inf(a);
    int s = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++s;
    }
    Cplx b[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) b[i][j] = a[i][j] * scale;

    Cplx acc[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
    Cplx term[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
    for (int k = 1; k <= 24; ++k) {
        mat_mul(term, b, term);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                term[i][j] /= static_cast<double>(k);
                acc[i][j] += term[i][j];
            }
    }
    for (int k = 0; k < s; ++k) mat_mul(acc, acc, acc);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = acc[i][j];
}

std::pair<Cplx, Cplx> semigroup_apply(Cplx q0_hat, Cplx v0_hat, double xi_norm,
                                      double t, const FluidParams& params,
                                      const CouplingAlpha& alpha, bool local) {
    if (!(xi_norm > 0))
        throw Error(ErrorCode::DomainError, "semigroup_apply requires |xi| > 0");
    if (t == 0.0) return {q0_hat, v0_hat};
    const double x = xi_norm * xi_norm;
    const double sigma = local ? acoustic_sigma_local(x, params)
                               : acoustic_sigma(x, params, alpha);
    const double g = 1.0 - 4.0 * sigma / (params.nu * params.nu * x);

    Cplx a[2][2];
    acoustic_matrix(xi_norm, sigma, params.nu, a);

    Cplx e[2][2];
    if (std::abs(g) < 1e-6) {
        // Regime boundary: the explicit formulas degenerate (S, R -> 0);
        // fall back to the matrix exponential.
        Cplx at[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) at[i][j] = a[i][j] * t;
        expm_2x2(at, e);
    } else {
        // exp(tA) = e^{mean t}(cosh(dt) I + sinh(dt)/d (A - mean I)), the
        // closed eigen-pair form valid in both frequency regimes.
        const double mean = -0.5 * params.nu * x;
        const Cplx delta = std::sqrt(Cplx(mean * mean - x * sigma, 0.0));
        const Cplx dt = delta * t;
        const Cplx ch = std::cosh(dt);
        const Cplx sh_over = sinch(dt) * t;
        const Cplx scale = std::exp(Cplx(mean * t, 0.0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Cplx v = (i == j ? ch : Cplx(0.0)) +
                         sh_over * (a[i][j] - (i == j ? Cplx(mean) : Cplx(0.0)));
                e[i][j] = scale * v;
            }
    }
    return {e[0][0] * q0_hat + e[0][1] * v0_hat,
            e[1][0] * q0_hat + e[1][1] * v0_hat};
}

Cplx heat_apply(Cplx w0_hat, double xi_norm2, double t, double mu) {
    return w0_hat * std::exp(-mu * xi_norm2 * t);
}

std::vector<EnvelopeRow> envelope_report(const FluidParams& params,
                                         const CouplingAlpha& alpha,
                                         const std::vector<double>& xi_grid) {
    std::vector<EnvelopeRow> rows;
    const Thresholds th = threshold_y(params, alpha);

    for (double xi : xi_grid) {
        const double x = xi * xi;
        const LinearModes lm = modes(x, params, alpha);

        auto op_norm = [&](double t) {
            if (lm.S == 0.0 && lm.R > 1e-3) {
                // Real distinct eigenvalues: the spectral formula
                // e^{tA} = (e^{l+ t}(A - l- I) - e^{l- t}(A - l+ I))/(l+ - l-)
                // stays finite where the cosh form overflows (huge delta t).
                const double sigma = acoustic_sigma(x, params, alpha);
                Cplx a[2][2];
                acoustic_matrix(xi, sigma, params.nu, a);
                const double lp = lm.lambda_plus.real();
                const double lmn = lm.lambda_minus.real();
                const double ep = std::exp(lp * t), em = std::exp(lmn * t);
                Cplx e[2][2];
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) {
                        const double diag = (r == c) ? 1.0 : 0.0;
                        e[r][c] = (ep * (a[r][c] - lmn * diag) -
                                   em * (a[r][c] - lp * diag)) /
                                  (lp - lmn);
                    }
                return mat_norm_2(e);
            }
            const auto q = semigroup_apply(1.0, 0.0, xi, t, params, alpha);
            const auto v = semigroup_apply(0.0, 1.0, xi, t, params, alpha);
            const Cplx e[2][2] = {{q.first, v.first}, {q.second, v.second}};
            return mat_norm_2(e);
        };

        double t1, t2;
        const double half = 0.5 * params.nu * x;
        if (lm.S > 0.02) {
            // One full oscillation period apart: the envelope factor is the
            // only change, so the measured rate is nu |xi|^2 / 2 exactly.
            t1 = 0.5 / half;
            t2 = t1 + 2.0 * 3.14159265358979323846 / (half * lm.S);
        } else {
            const double slow = std::max(half * (1.0 - lm.R), 1e-300);
            t1 = 10.0 / slow;
            t2 = 20.0 / slow;
        }
        const double rate =
            -(std::log(op_norm(t2)) - std::log(op_norm(t1))) / (t2 - t1);

        double bound = 0.0;
        switch (lm.regime) {
        case Regime::Low:
            bound = 0.5 * params.nu * x;
            break;
        case Regime::Transition:
            bound = 0.5 * params.nu * th.x_alpha * (1.0 - th.m);
            break;
        case Regime::High:
            bound = params.kappa * alpha.alpha * alpha.alpha / (2.0 * params.nu);
            break;
        }
        rows.push_back({x, lm.regime, lm.regime == Regime::Low ? lm.S : lm.R,
                        lm.lambda_plus.real(), lm.lambda_minus.real(),
                        lm.lambda_plus.imag(), rate, bound});
    }
    return rows;
}

} // namespace koplab

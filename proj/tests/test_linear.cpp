#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "koplab/linear.hpp"

using namespace koplab;

namespace {

// Independent matrix exponential: Taylor series in long double with scaling
// and squaring, written apart from the library fallback.
void expm_oracle(const Cplx a[2][2], Cplx out[2][2]) {
    using LC = std::complex<long double>;
    LC b[2][2];
    long double norm = 0.0L;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            b[i][j] = LC(a[i][j].real(), a[i][j].imag());
            norm = std::max(norm, std::abs(b[i][j]));
        }
    int s = 0;
    while (norm > 0.25L) {
        norm /= 2.0L;
        ++s;
    }
    const long double scale = std::pow(0.5L, static_cast<long double>(s));
    for (auto& row : b)
        for (auto& v : row) v *= scale;

    LC acc[2][2] = {{1.0L, 0.0L}, {0.0L, 1.0L}};
    LC term[2][2] = {{1.0L, 0.0L}, {0.0L, 1.0L}};
    for (int k = 1; k <= 30; ++k) {
        LC next[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                next[i][j] = (term[i][0] * b[0][j] + term[i][1] * b[1][j]) /
                             static_cast<long double>(k);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                term[i][j] = next[i][j];
                acc[i][j] += term[i][j];
            }
    }
    for (int k = 0; k < s; ++k) {
        LC sq[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                sq[i][j] = acc[i][0] * acc[0][j] + acc[i][1] * acc[1][j];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) acc[i][j] = sq[i][j];
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out[i][j] = Cplx(static_cast<double>(acc[i][j].real()),
                             static_cast<double>(acc[i][j].imag()));
}

FluidParams default_params() { return make_params(1.0, 0.0, 1.0, 1.0); }

} // namespace

TEST_SUITE("linear") {

TEST_CASE("g_alpha closed values and limits") {
    const FluidParams p = default_params();  // nu = 2, M = 1
    const CouplingAlpha a1(1.0);
    CHECK(g_alpha(2.0, p, a1) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(g_alpha(1e12, p, a1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(g_alpha(0.0, p, a1), Error);

    // Consistency with the discriminant form f(x) = nu^2 x - 4 sigma(x):
    // g = f/(nu^2 x).
    for (double x : {0.1, 1.0, 7.3, 250.0}) {
        const double f =
            p.nu * p.nu * x - 4.0 * acoustic_sigma(x, p, a1);
        CHECK(g_alpha(x, p, a1) ==
              doctest::Approx(f / (p.nu * p.nu * x)).epsilon(1e-12));
    }

    // Strict monotonicity on a sample grid.
    double prev = g_alpha(1e-3, p, a1);
    for (double x = 2e-3; x < 1e4; x *= 1.7) {
        const double cur = g_alpha(x, p, a1);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("threshold closed form vs bisection") {
    const FluidParams p = default_params();
    // Golden-ratio case: g reduces to x^2 - x - 1 = 0.
    CHECK(threshold_x_beta(0.0, p, CouplingAlpha(1.0)) ==
          doctest::Approx(0.5 * (1.0 + std::sqrt(5.0))).epsilon(1e-12));

    // Root of 1/x + 100/(x+100) = 1/2.
    const double x_half = threshold_x_beta(0.5, p, CouplingAlpha(10.0));
    CHECK(x_half == doctest::Approx(103.9).epsilon(2e-3));
    CHECK(g_alpha(x_half, p, CouplingAlpha(10.0)) ==
          doctest::Approx(0.5).epsilon(1e-10));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const FluidParams params =
            make_params(0.2 + 2.0 * unit(rng), -0.1 + 0.4 * unit(rng),
                        0.2 + 2.0 * unit(rng), 0.2 + 2.0 * unit(rng));
        const CouplingAlpha alpha(std::pow(10.0, 2.0 * unit(rng)));
        const double beta = 0.95 * unit(rng);
        const double closed = threshold_x_beta(beta, params, alpha);
        const double bisect = threshold_x_beta_bisect(beta, params, alpha);
        CHECK(std::abs(closed - bisect) <= 1e-10 * closed);
        CHECK(g_alpha(closed, params, alpha) ==
              doctest::Approx(beta).epsilon(1e-9).scale(1.0));
    }

    // Increasing in beta.
    const CouplingAlpha a4(4.0);
    double prev = threshold_x_beta(0.0, p, a4);
    for (double beta = 0.1; beta < 0.95; beta += 0.1) {
        const double cur = threshold_x_beta(beta, p, a4);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("threshold asymptotic branches at alpha = 1e3") {
    const CouplingAlpha big(1e3);
    const double beta = 0.25;
    // Finite-limit branch M(1-beta) > 1: x -> 4p/(nu^2(1-beta) - 4 kappa).
    {
        const FluidParams p = make_params(2.0, 0.0, 1.0, 1.0);  // nu=4, M=4
        const double x = threshold_x_beta(beta, p, big);
        const double limit =
            4.0 * p.p / (p.nu * p.nu * (1.0 - beta) - 4.0 * p.kappa);
        CHECK(std::abs(x - limit) <= 0.02 * limit);
    }
    // Growing branch M(1-beta) < 1: x ~ (1/(M(1-beta)) - 1) alpha^2.
    {
        const FluidParams p = make_params(0.5, 0.0, 1.0, 1.0);  // nu=1, M=1/4
        const double x = threshold_x_beta(beta, p, big);
        const double c = 1.0 / (p.M * (1.0 - beta)) - 1.0;
        CHECK(std::abs(x - c * 1e6) <= 0.02 * c * 1e6);
    }
    // Critical branch M(1-beta) = 1: x ~ (2/nu) sqrt(p/(1-beta)) alpha.
    // Needs nu^2/(4 kappa) = 1/(1-beta) = 4/3, i.e. nu = sqrt(16/3).
    {
        const double nu_target = std::sqrt(16.0 / 3.0);
        const FluidParams pc =
            make_params(nu_target / 2.0, 0.0, 1.0, 1.0);
        CHECK(pc.M == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
        const double x = threshold_x_beta(beta, pc, big);
        const double pred =
            2.0 / pc.nu * std::sqrt(pc.p / (1.0 - beta)) * 1e3;
        CHECK(std::abs(x - pred) <= 0.02 * pred);
    }
}

TEST_CASE("threshold_y bounds and examples") {
    const FluidParams p = default_params();  // M = 1
    const Thresholds t10 = threshold_y(p, CouplingAlpha(10.0));
    CHECK(t10.m == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(t10.y_alpha == doctest::Approx(103.92).epsilon(1e-3));
    CHECK(t10.y_alpha >= 100.0);
    CHECK(t10.y_alpha <= 200.0);
    CHECK(t10.x_alpha < t10.y_alpha);
    CHECK(g_alpha(t10.x_alpha, p, CouplingAlpha(10.0)) ==
          doctest::Approx(0.0).epsilon(1e-10).scale(1.0));

    // alpha = 1 sits outside the asymptotic bound: y = (3+sqrt(17))/2.
    const Thresholds t1 = threshold_y(p, CouplingAlpha(1.0));
    CHECK(t1.y_alpha ==
          doctest::Approx(0.5 * (3.0 + std::sqrt(17.0))).epsilon(1e-12));
    CHECK(t1.y_alpha > 2.0);

    const Thresholds tbig = threshold_y(p, CouplingAlpha(1e3));
    CHECK(tbig.y_alpha / 1e6 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("modes invariants on random samples") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const FluidParams p =
            make_params(0.2 + 2.0 * unit(rng), 0.0, 0.2 + 2.0 * unit(rng),
                        0.2 + 2.0 * unit(rng));
        const CouplingAlpha alpha(std::pow(10.0, 2.0 * unit(rng)));
        const double x = std::pow(10.0, -3.0 + 6.0 * unit(rng));
        const LinearModes lm = modes(x, p, alpha);

        const double tr = -p.nu * x;
        const double det = x * acoustic_sigma(x, p, alpha);
        CHECK(std::abs((lm.lambda_plus + lm.lambda_minus).real() - tr) <=
              1e-12 * std::abs(tr));
        CHECK(std::abs((lm.lambda_plus + lm.lambda_minus).imag()) <=
              1e-12 * std::abs(tr));
        CHECK(std::abs(lm.lambda_plus * lm.lambda_minus - det) <= 1e-12 * det);

        if (lm.S > 0.0) {
            CHECK(lm.lambda_plus == std::conj(lm.lambda_minus));
            CHECK(lm.lambda_plus.real() ==
                  doctest::Approx(-p.nu * x / 2.0).epsilon(1e-14));
        }
        if (lm.R > 0.0) {
            CHECK(lm.lambda_plus.imag() == 0.0);
            CHECK(lm.lambda_plus.real() < 0.0);
            CHECK(lm.lambda_minus.real() < 0.0);
            // (remvelocity): sigma = (nu^2 x / 4)(1-R)(1+R).
            const double sigma = acoustic_sigma(x, p, alpha);
            CHECK(std::abs(sigma - p.nu * p.nu * x / 4.0 * (1.0 - lm.R) *
                                       (1.0 + lm.R)) <= 1e-12 * sigma);
        }
    }
}

TEST_CASE("modes at the regime boundary") {
    const FluidParams p = default_params();
    const CouplingAlpha alpha(8.0);
    const double x = threshold_x_beta(0.0, p, alpha);
    const LinearModes lm = modes(x, p, alpha);
    CHECK(std::abs(lm.lambda_plus - lm.lambda_minus) <= 1e-5 * p.nu * x);
    CHECK(lm.lambda_plus.real() ==
          doctest::Approx(-p.nu * x / 2.0).epsilon(1e-9));
}

TEST_CASE("semigroup against an independent matrix exponential") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const FluidParams p = default_params();
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const CouplingAlpha alpha(1.0 + 30.0 * unit(rng));
        const double x_alpha = threshold_x_beta(0.0, p, alpha);
        double x;
        switch (trial % 3) {
        case 0: x = x_alpha * (1.0 + 1e-4 * (2.0 * unit(rng) - 1.0)); break;
        case 1: x = x_alpha * std::pow(10.0, 3.0 * (unit(rng) - 0.5)); break;
        default: x = std::pow(10.0, -2.0 + 4.0 * unit(rng)); break;
        }
        const double r = std::sqrt(x);
        const double t = 0.05 + unit(rng) * 3.0 / (1.0 + p.nu * x);
        const Cplx q0(unit(rng) - 0.5, unit(rng) - 0.5);
        const Cplx v0(unit(rng) - 0.5, unit(rng) - 0.5);

        const auto got = semigroup_apply(q0, v0, r, t, p, alpha);
        Cplx at[2][2] = {{0.0, -r * t},
                         {r * acoustic_sigma(x, p, alpha) * t, -p.nu * x * t}};
        Cplx e[2][2];
        expm_oracle(at, e);
        worst = std::max({worst,
                          std::abs(got.first - (e[0][0] * q0 + e[0][1] * v0)),
                          std::abs(got.second - (e[1][0] * q0 + e[1][1] * v0))});
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("semigroup identity, composition, and Korteweg symbol") {
    const FluidParams p = default_params();
    const CouplingAlpha alpha(4.0);
    const Cplx q0(0.3, -0.1), v0(-0.7, 0.2);

    const auto id = semigroup_apply(q0, v0, 1.5, 0.0, p, alpha);
    CHECK(id.first == q0);
    CHECK(id.second == v0);

    for (double r : {0.2, 1.0, 3.7}) {
        const auto full = semigroup_apply(q0, v0, r, 1.2, p, alpha);
        const auto half = semigroup_apply(q0, v0, r, 0.6, p, alpha);
        const auto comp =
            semigroup_apply(half.first, half.second, r, 0.6, p, alpha);
        CHECK(std::abs(comp.first - full.first) <= 1e-10);
        CHECK(std::abs(comp.second - full.second) <= 1e-10);
    }

    // Local symbol: oracle with sigma = p + kappa x.
    const double r = 2.0, x = 4.0, t = 0.7;
    const auto got = semigroup_apply(q0, v0, r, t, p, alpha, true);
    Cplx at[2][2] = {{0.0, -r * t},
                     {r * (p.p + p.kappa * x) * t, -p.nu * x * t}};
    Cplx e[2][2];
    expm_oracle(at, e);
    CHECK(std::abs(got.first - (e[0][0] * q0 + e[0][1] * v0)) <= 1e-10);
    CHECK(std::abs(got.second - (e[1][0] * q0 + e[1][1] * v0)) <= 1e-10);
}

TEST_CASE("oscillatory envelope decays at exactly nu x / 2") {
    const FluidParams p = default_params();
    const CouplingAlpha alpha(10.0);
    const double x = 0.5;  // well below x_alpha
    const LinearModes lm = modes(x, p, alpha);
    REQUIRE(lm.S > 0.0);
    const double period = 2.0 * 3.14159265358979323846 / (p.nu * x / 2.0 * lm.S);
    const double t0 = 0.3;
    const auto a = semigroup_apply(1.0, 0.5, std::sqrt(x), t0, p, alpha);
    const auto b =
        semigroup_apply(1.0, 0.5, std::sqrt(x), t0 + period, p, alpha);
    const double ratio = std::abs(b.first) / std::abs(a.first);
    const double rate = -std::log(ratio) / period;
    CHECK(rate == doctest::Approx(p.nu * x / 2.0).epsilon(1e-6));
}

TEST_CASE("heat flow") {
    CHECK(heat_apply(Cplx(1.0, 2.0), 3.0, 0.0, 0.5) == Cplx(1.0, 2.0));
    const double efold = heat_apply(Cplx(1.0, 0.0), 2.0, 1.0 / (0.5 * 2.0), 0.5)
                             .real();
    CHECK(efold == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    double prev = 1.0;
    for (double t = 0.1; t < 2.0; t += 0.1) {
        const double cur = std::abs(heat_apply(Cplx(1.0, 0.0), 2.0, t, 0.5));
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("acoustic block vanishes with xi") {
    const FluidParams p = default_params();
    const CouplingAlpha alpha(4.0);
    for (double r : {1e-3, 1e-4, 1e-6}) {
        const double x = r * r;
        // Every entry of A(xi) is O(|xi|): |A01| = r, |A10| = r sigma -> r p,
        // |A11| = nu x <= nu r for r <= 1.
        const double bound = (1.0 + acoustic_sigma(x, p, alpha) + p.nu) * r;
        CHECK(r <= bound);
        CHECK(r * acoustic_sigma(x, p, alpha) <= bound);
        CHECK(p.nu * x <= bound);
    }
}

TEST_CASE("envelope report bounds") {
    const FluidParams p = default_params();
    const CouplingAlpha alpha(12.0);
    const Thresholds th = threshold_y(p, alpha);
    std::vector<double> xi;
    for (double x = th.x_alpha * 1e-3; x < th.y_alpha * 1e3; x *= 2.0)
        xi.push_back(std::sqrt(x));
    for (const auto& row : envelope_report(p, alpha, xi)) {
        if (row.regime == Regime::Low)
            CHECK(row.rate_measured ==
                  doctest::Approx(row.rate_bound).epsilon(1e-6));
        else
            CHECK(row.rate_measured >= row.rate_bound * (1.0 - 1e-6) - 1e-12);
    }

    // High-frequency slow eigenvalue approaches -(p + kappa alpha^2)/nu.
    const double x_far = 1e4 * th.y_alpha;
    const LinearModes lm = modes(x_far, p, alpha);
    const double slow = std::min(std::abs(lm.lambda_plus.real()),
                                 std::abs(lm.lambda_minus.real()));
    const double limit = (p.p + p.kappa * alpha.alpha * alpha.alpha) / p.nu;
    CHECK(slow == doctest::Approx(limit).epsilon(0.01));
    CHECK(slow >= p.kappa * alpha.alpha * alpha.alpha / (2.0 * p.nu));
}

} // TEST_SUITE

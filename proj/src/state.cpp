#include "koplab/state.hpp"

#include <cmath>
#include <random>

#include "koplab/lp.hpp"

namespace koplab {

State make_initial_data(const GridSpec& grid, double amplitude, int j_lo,
                        int j_hi, std::uint64_t seed) {
    if (!(amplitude > 0))
        throw Error(ErrorCode::ParameterOutOfRange,
                    "make_initial_data: amplitude must be > 0");
    if (j_lo > j_hi)
        throw Error(ErrorCode::BandOutOfRange, "make_initial_data: j_lo > j_hi");
    const double xi_min = grid.dxi();
    const double xi_nyquist = grid.dxi() * (grid.n / 2);
    if (kLpAnnulusHi * std::ldexp(1.0, j_hi) > xi_nyquist ||
        kLpAnnulusLo * std::ldexp(1.0, j_lo) < xi_min * (1.0 - 1e-12))
        throw Error(ErrorCode::BandOutOfRange,
                    "make_initial_data: dyadic band not resolvable on this grid");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    const std::size_t total = grid.size();
    // Band-pass weight: sum of the dyadic profiles over [j_lo, j_hi].
    std::vector<double> band(total, 0.0);
    for (std::size_t k = 0; k < total; ++k) {
        const double norm = std::sqrt(grid.xi_norm2(k));
        if (norm == 0.0) continue;
        double w = 0.0;
        for (int j = j_lo; j <= j_hi; ++j) w += lp_phi(std::ldexp(norm, -j));
        band[k] = w;
    }

    State st;
    st.q = SpectralField(grid, 1);
    st.u = SpectralField(grid, grid.d);
    auto fill = [&](SpectralField& f) {
        for (auto& comp : f.comps) {
            for (std::size_t k = 0; k < total; ++k) {
                const double re = normal(rng);
                const double im = normal(rng);
                comp[k] = band[k] * Complex(re, im);
            }
        }
        enforce_hermitian(f);
    };
    fill(st.q);
    fill(st.u);

    const double d_half = 0.5 * grid.d;
    const double current = besov_norm(st.q, d_half - 1) +
                           besov_norm(st.q, d_half) +
                           besov_norm(st.u, d_half - 1);
    const double scale = amplitude / current;
    st.q = field_scale(st.q, scale);
    st.u = field_scale(st.u, scale);
    return st;
}

} // namespace koplab

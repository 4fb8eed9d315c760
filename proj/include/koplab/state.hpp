#pragma once

#include <cstdint>
#include <optional>

#include "koplab/field.hpp"

namespace koplab {

/// Fluctuation state: q = rho - 1 (scalar), u (d components), and optionally
/// the order-parameter fluctuation c - 1. All components share one grid.
struct State {
    SpectralField q;
    SpectralField u;
    std::optional<SpectralField> c_minus_one;
};

/// Band-limited random initial data: q and u supported on dyadic shells
/// [j_lo, j_hi], mean-free, rescaled so that
/// ||q||_{B^{d/2-1}} + ||q||_{B^{d/2}} + ||u||_{B^{d/2-1}} = amplitude.
/// Deterministic given the seed.
State make_initial_data(const GridSpec& grid, double amplitude, int j_lo,
                        int j_hi, std::uint64_t seed);

} // namespace koplab

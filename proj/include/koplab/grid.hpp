#pragma once

#include <array>
#include <cstddef>
#include <cmath>

#include "koplab/errors.hpp"

namespace koplab {

/// Periodic grid on the torus [0, L)^d with n points per axis (power of two).
/// Frequencies are xi = 2 pi k / L with per-axis k in [-n/2, n/2).
struct GridSpec {
    int d = 1;
    int n = 8;
    double L = 2.0 * 3.14159265358979323846 * 16.0;

    GridSpec() = default;
    GridSpec(int d_, int n_, double L_) : d(d_), n(n_), L(L_) {
        if (d < 1 || d > 3)
            throw Error(ErrorCode::ParameterOutOfRange, "grid d must be in {1,2,3}");
        if (n < 8 || (n & (n - 1)) != 0)
            throw Error(ErrorCode::ParameterOutOfRange,
                        "grid n must be a power of two, >= 8");
        if (!(L > 0))
            throw Error(ErrorCode::ParameterOutOfRange, "grid L must be > 0");
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(n);
        return s;
    }

    /// Signed per-axis wavenumber for storage index i in [0, n).
    int wavenumber(int i) const { return i < n / 2 ? i : i - n; }

    double dxi() const { return 2.0 * 3.14159265358979323846 / L; }

    /// Per-axis frequencies of the flat storage index.
    std::array<double, 3> xi(std::size_t flat) const {
        std::array<double, 3> out{0.0, 0.0, 0.0};
        const double h = dxi();
        std::size_t rem = flat;
        for (int axis = d - 1; axis >= 0; --axis) {
            const int i = static_cast<int>(rem % static_cast<std::size_t>(n));
            rem /= static_cast<std::size_t>(n);
            out[static_cast<std::size_t>(axis)] = h * wavenumber(i);
        }
        return out;
    }

    std::array<int, 3> index(std::size_t flat) const {
        std::array<int, 3> out{0, 0, 0};
        std::size_t rem = flat;
        for (int axis = d - 1; axis >= 0; --axis) {
            out[static_cast<std::size_t>(axis)] =
                static_cast<int>(rem % static_cast<std::size_t>(n));
            rem /= static_cast<std::size_t>(n);
        }
        return out;
    }

    double xi_norm2(std::size_t flat) const {
        const auto x = xi(flat);
        return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    }

    /// Largest per-axis frequency kept by the two-thirds rule.
    int dealias_kmax() const { return n / 3; }

    bool operator==(const GridSpec& o) const {
        return d == o.d && n == o.n && L == o.L;
    }
};

} // namespace koplab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "koplab/grid.hpp"
#include "koplab/params.hpp"
#include "koplab/solver.hpp"

namespace koplab {

/// Everything a run needs, read from a sectioned key=value file:
///   [fluid] mu, lambda, kappa, p, gamma
///   [grid]  d, n, L
///   [time]  dt, T, record_every
///   [sweep] alphas (comma list), h, seed
///   [init]  amplitude, j_lo, j_hi   (optional; defaults below)
struct ExperimentConfig {
    FluidParams fluid;
    GridSpec grid;
    StepConfig step;

    std::vector<double> alphas;
    double h = 0.5;
    std::uint64_t seed = 1;

    double amplitude = 1e-3;
    int j_lo = -2;
    int j_hi = -1;

    std::string output_dir = ".";
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Comma-separated positive reals, e.g. "4,8,16"; must be strictly
/// increasing.
std::vector<double> parse_alpha_list(const std::string& text);

} // namespace koplab

#pragma once

#include <vector>

#include "koplab/field.hpp"
#include "koplab/params.hpp"
#include "koplab/state.hpp"

namespace koplab {

/// Radial profiles of the dyadic partition: chi is a smooth step, equal to 1
/// on B(0, 3/4), vanishing outside B(0, 4/3), radially nonincreasing, and
/// phi_lp(r) = chi(r/2) - chi(r) is supported in the annulus
/// {3/4 <= r <= 8/3}. The telescoping sum of phi_lp over dyadic scales is
/// exactly 1 away from the origin.
double lp_chi(double r);
double lp_phi(double r);

constexpr double kLpAnnulusLo = 0.75;       // c0
constexpr double kLpAnnulusHi = 8.0 / 3.0;  // C0

/// Dyadic machinery bound to one grid: the active block range and cached
/// per-block spectral weights.
class LittlewoodPaley {
public:
    explicit LittlewoodPaley(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    int j_lo() const { return j_lo_; }
    int j_hi() const { return j_hi_; }

    /// Spectral restriction of f to block j; zero field when j is outside
    /// the active range.
    SpectralField block(const SpectralField& f, int j) const;

    /// Grid L^2 norm of block j (all components), without materializing it.
    double block_l2(const SpectralField& f, int j) const;

    /// ||f||_{B^s_{2,1}} = sum_j 2^{js} ||Delta_j f||_{L^2}. The k = 0 mode
    /// never contributes (the homogeneous norm ignores the mean).
    double besov_norm(const SpectralField& f, double s) const;

    /// ||f||_{B_alpha^{s+2,s}} = sum_j min(alpha^2, 2^{2j}) 2^{js} ||Delta_j f||.
    double hybrid_norm(const SpectralField& f, double s,
                       const CouplingAlpha& alpha) const;

private:
    GridSpec grid_;
    int j_lo_ = 0;
    int j_hi_ = 0;
    std::vector<std::vector<double>> weights_;  // per block, per mode
};

/// Shared per-grid instance (weights are moderately expensive to build).
const LittlewoodPaley& lp_for(const GridSpec& grid);

SpectralField dyadic_block(const SpectralField& f, int j);
double besov_norm(const SpectralField& f, double s);
double hybrid_norm(const SpectralField& f, double s, const CouplingAlpha& alpha);

/// Time-stamped sequence of states with trapezoid quadrature in time.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;

    std::size_t size() const { return times.size(); }
};

enum class FieldSelector { Q, U, C };

enum class TimeExponent { LInf, L1 };

struct NormKind {
    bool hybrid = false;
    double alpha = 0.0;  // used when hybrid

    static NormKind plain() { return {}; }
    static NormKind hybrid_alpha(double a) { return {true, a}; }
};

/// Chemin-Lerner norm: per-block time aggregation (sup or trapezoid
/// integral) before the weighted l^1 sum over blocks.
double tilde_norm(const Trajectory& traj, FieldSelector sel, double s,
                  TimeExponent rho, const NormKind& kind);

/// Plain L^rho-in-time of the spatial Besov norm (time integral after the
/// block sum); used for the non-tilde norms of the convergence statements.
double time_lp_besov(const Trajectory& traj, FieldSelector sel, double s,
                     TimeExponent rho);

/// Composite solution norms: E is the six-term (q, u) norm; F adds the four
/// order-parameter terms and requires c on every state.
double e_norm(const Trajectory& traj, double s, const CouplingAlpha& alpha,
              const FluidParams& params);
double f_norm(const Trajectory& traj, double s, const CouplingAlpha& alpha,
              const FluidParams& params);

} // namespace koplab

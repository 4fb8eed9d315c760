#pragma once

#include "koplab/linear.hpp"
#include "koplab/lp.hpp"
#include "koplab/state.hpp"

namespace koplab {

/// Which momentum closure drives the run: the nonlocal order-parameter
/// capillarity (symbol -|xi|^2/(1 + |xi|^2/alpha^2)) or its local Korteweg
/// limit (-|xi|^2).
enum class ModelKind { OrderParameter, Korteweg };

struct StepConfig {
    double dt = 1e-3;
    double t_final = 1.0;
    int n_trunc = -1;       // Friedrichs projector level; < 0 disables it
    int record_every = 0;   // 0: record only t = 0 and t_final
};

/// Nonlinear right-hand side (the linear part lives in the exact per-mode
/// flow):
///   dq = -(u . grad q + q div u)
///   du = -u . grad u + K(q) grad q - I(q) (mu Lap u + (lambda+mu) grad div u)
/// Inputs and products are dealiased by the two-thirds rule; the composed
/// coefficients K(q), I(q) are themselves band-limited before multiplying so
/// the quadratic terms are alias-free. Throws VacuumError when the density
/// 1 + q is not bounded away from zero.
State rhs_nonlinear(const State& s, const FluidParams& params);

/// Exact flow of the linearized system over time t: the acoustic 2x2 block
/// acts on (q, Lambda^{-1} div u) per mode, the solenoidal part decays by
/// the heat factor exp(-mu |xi|^2 t), and the mean of u is left in place.
State linear_step(const State& s, double t, const FluidParams& params,
                  const CouplingAlpha& alpha, ModelKind kind);

/// One Strang step: half linear flow, explicit-midpoint nonlinear step,
/// half linear flow. Applies the Friedrichs projector when configured and
/// throws BlowUp when the fields leave the trust region.
State strang_step(const State& s, double dt, const FluidParams& params,
                  const CouplingAlpha& alpha, ModelKind kind, int n_trunc);

/// Integrates to t_final and records snapshots. For the order-parameter
/// model each recorded state carries c - 1 = phi_alpha * q.
Trajectory integrate(const State& s0, const FluidParams& params,
                     const CouplingAlpha& alpha, ModelKind kind,
                     const StepConfig& config);

/// Capillarity defect kappa grad(Lap q - alpha^2 (phi_alpha * q - q)):
/// r_hat(xi) = -i kappa xi |xi|^4 / (alpha^2 + |xi|^2) * q_hat(xi).
/// Vector field with d components.
SpectralField remainder_r_alpha(const SpectralField& q,
                                const FluidParams& params,
                                const CouplingAlpha& alpha);

} // namespace koplab

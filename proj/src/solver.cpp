#include "koplab/solver.hpp"

#include <cmath>

namespace koplab {
namespace {

std::vector<Complex> derivative(const SpectralField& f, int comp, int axis) {
    const auto& g = f.grid;
    std::vector<Complex> out(g.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto xi = g.xi(i);
        out[i] = Complex(0.0, xi[static_cast<std::size_t>(axis)]) *
                 f.comps[static_cast<std::size_t>(comp)][i];
    }
    return out;
}

std::vector<double> to_physical(const GridSpec& g, std::vector<Complex> hat) {
    SpectralField f(g, 1);
    f.comps[0] = std::move(hat);
    return dft_inverse(f)[0];
}

/// Band-limits a pointwise-composed coefficient field by a spectral
/// round-trip, keeping the subsequent products alias-free.
std::vector<double> dealias_physical(const GridSpec& g,
                                     const std::vector<double>& phys) {
    PhysicalData pd{phys};
    return dft_inverse(dealias(dft_forward(g, pd)))[0];
}

State state_axpy(const State& base, double a, const State& dir) {
    State out;
    out.q = base.q;
    field_axpy(out.q, a, dir.q);
    out.u = base.u;
    field_axpy(out.u, a, dir.u);
    return out;
}

} // namespace

State rhs_nonlinear(const State& s, const FluidParams& params) {
    const GridSpec& g = s.q.grid;
    const int d = g.d;
    const std::size_t sz = g.size();

    const SpectralField qd = dealias(s.q);
    const SpectralField ud = dealias(s.u);

    const std::vector<double> q_phys = dft_inverse(qd)[0];
    const PhysicalData u_phys = dft_inverse(ud);

    for (double v : q_phys)
        if (!(1.0 + v > 1e-8))
            throw Error(ErrorCode::VacuumError,
                        "density 1 + q not bounded away from zero");

    std::vector<double> k_coef(sz), i_coef(sz);
    for (std::size_t i = 0; i < sz; ++i) {
        k_coef[i] = coeff_K(q_phys[i], params);
        i_coef[i] = coeff_I(q_phys[i]);
    }
    k_coef = dealias_physical(g, k_coef);
    i_coef = dealias_physical(g, i_coef);

    std::vector<std::vector<double>> grad_q(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a)
        grad_q[static_cast<std::size_t>(a)] =
            to_physical(g, derivative(qd, 0, a));

    std::vector<Complex> divu_hat(sz, Complex(0.0));
    for (int a = 0; a < d; ++a) {
        const auto da = derivative(ud, a, a);
        for (std::size_t i = 0; i < sz; ++i) divu_hat[i] += da[i];
    }
    const std::vector<double> divu = to_physical(g, divu_hat);

    // grad_u[b][a] = d_a u_b
    std::vector<std::vector<std::vector<double>>> grad_u(
        static_cast<std::size_t>(d),
        std::vector<std::vector<double>>(static_cast<std::size_t>(d)));
    for (int b = 0; b < d; ++b)
        for (int a = 0; a < d; ++a)
            grad_u[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
                to_physical(g, derivative(ud, b, a));

    // (Au)_b = mu Lap u_b + (lambda + mu) d_b div u
    PhysicalData au(static_cast<std::size_t>(d));
    for (int b = 0; b < d; ++b) {
        std::vector<Complex> hat(sz);
        for (std::size_t i = 0; i < sz; ++i) {
            const auto xi = g.xi(i);
            hat[i] = -params.mu * g.xi_norm2(i) *
                         ud.comps[static_cast<std::size_t>(b)][i] +
                     (params.lambda + params.mu) *
                         Complex(0.0, xi[static_cast<std::size_t>(b)]) *
                         divu_hat[i];
        }
        au[static_cast<std::size_t>(b)] = to_physical(g, std::move(hat));
    }

    PhysicalData rhs_q(1, std::vector<double>(sz));
    PhysicalData rhs_u(static_cast<std::size_t>(d), std::vector<double>(sz));
    for (std::size_t i = 0; i < sz; ++i) {
        double adv_q = q_phys[i] * divu[i];
        for (int a = 0; a < d; ++a)
            adv_q += u_phys[static_cast<std::size_t>(a)][i] *
                     grad_q[static_cast<std::size_t>(a)][i];
        rhs_q[0][i] = -adv_q;

        for (int b = 0; b < d; ++b) {
            double adv_u = 0.0;
            for (int a = 0; a < d; ++a)
                adv_u += u_phys[static_cast<std::size_t>(a)][i] *
                         grad_u[static_cast<std::size_t>(b)]
                                [static_cast<std::size_t>(a)][i];
            rhs_u[static_cast<std::size_t>(b)][i] =
                -adv_u + k_coef[i] * grad_q[static_cast<std::size_t>(b)][i] -
                i_coef[i] * au[static_cast<std::size_t>(b)][i];
        }
    }

    State out;
    out.q = dealias(dft_forward(g, rhs_q));
    out.u = dealias(dft_forward(g, rhs_u));
    return out;
}

State linear_step(const State& s, double t, const FluidParams& params,
                  const CouplingAlpha& alpha, ModelKind kind) {
    const GridSpec& g = s.q.grid;
    const int d = g.d;
    const bool local = kind == ModelKind::Korteweg;

    State out;
    out.q = SpectralField(g, 1);
    out.u = SpectralField(g, d);

    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto xi = g.xi(i);
        const double x = g.xi_norm2(i);
        if (x == 0.0) {
            out.q.comps[0][i] = s.q.comps[0][i];
            for (int b = 0; b < d; ++b)
                out.u.comps[static_cast<std::size_t>(b)][i] =
                    s.u.comps[static_cast<std::size_t>(b)][i];
            continue;
        }
        const double r = std::sqrt(x);

        Complex dot(0.0);
        for (int b = 0; b < d; ++b)
            dot += xi[static_cast<std::size_t>(b)] *
                   s.u.comps[static_cast<std::size_t>(b)][i];
        const Complex v0 = Complex(0.0, 1.0) * dot / r;

        const auto [q1, v1] =
            semigroup_apply(s.q.comps[0][i], v0, r, t, params, alpha, local);
        out.q.comps[0][i] = q1;

        const double heat = std::exp(-params.mu * x * t);
        for (int b = 0; b < d; ++b) {
            const Complex long0 =
                -Complex(0.0, 1.0) * xi[static_cast<std::size_t>(b)] * v0 / r;
            const Complex trans =
                s.u.comps[static_cast<std::size_t>(b)][i] - long0;
            const Complex long1 =
                -Complex(0.0, 1.0) * xi[static_cast<std::size_t>(b)] * v1 / r;
            out.u.comps[static_cast<std::size_t>(b)][i] = heat * trans + long1;
        }
    }
    return out;
}

State strang_step(const State& s, double dt, const FluidParams& params,
                  const CouplingAlpha& alpha, ModelKind kind, int n_trunc) {
    State half = linear_step(s, 0.5 * dt, params, alpha, kind);

    const State k1 = rhs_nonlinear(half, params);
    const State mid = state_axpy(half, 0.5 * dt, k1);
    const State k2 = rhs_nonlinear(mid, params);
    State stepped = state_axpy(half, dt, k2);

    State out = linear_step(stepped, 0.5 * dt, params, alpha, kind);
    if (n_trunc >= 0) {
        out.q = friedrichs_project(out.q, n_trunc);
        out.u = friedrichs_project(out.u, n_trunc);
    }
    const double amp = l2_norm(out.q) + l2_norm(out.u);
    if (!std::isfinite(amp) || amp > 1e6)
        throw Error(ErrorCode::BlowUp, "solution left the trust region");
    return out;
}

Trajectory integrate(const State& s0, const FluidParams& params,
                     const CouplingAlpha& alpha, ModelKind kind,
                     const StepConfig& config) {
    if (!(config.dt > 0) || !(config.t_final > 0))
        throw Error(ErrorCode::ParameterOutOfRange,
                    "integrate requires dt > 0 and t_final > 0");
    const long nsteps = std::max(
        1L, std::lround(std::ceil(config.t_final / config.dt - 1e-12)));
    const double dt = config.t_final / static_cast<double>(nsteps);

    Trajectory traj;
    auto record = [&](const State& s, double t) {
        State copy = s;
        if (kind == ModelKind::OrderParameter)
            copy.c_minus_one = mollifier_phi_alpha(s.q, alpha);
        traj.times.push_back(t);
        traj.states.push_back(std::move(copy));
    };

    State cur = s0;
    record(cur, 0.0);
    for (long i = 1; i <= nsteps; ++i) {
        cur = strang_step(cur, dt, params, alpha, kind, config.n_trunc);
        const bool last = i == nsteps;
        if (last || (config.record_every > 0 && i % config.record_every == 0))
            record(cur, static_cast<double>(i) * dt);
    }
    return traj;
}

SpectralField remainder_r_alpha(const SpectralField& q,
                                const FluidParams& params,
                                const CouplingAlpha& alpha) {
    const GridSpec& g = q.grid;
    const double a2 = alpha.alpha * alpha.alpha;
    SpectralField out(g, g.d);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto xi = g.xi(i);
        const double x = g.xi_norm2(i);
        const Complex base =
            Complex(0.0, -params.kappa * x * x / (a2 + x)) * q.comps[0][i];
        for (int b = 0; b < g.d; ++b)
            out.comps[static_cast<std::size_t>(b)][i] =
                xi[static_cast<std::size_t>(b)] * base;
    }
    return out;
}

} // namespace koplab

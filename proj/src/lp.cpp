#include "koplab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace koplab {
namespace {

double smooth_step(double t) {
    // 0 for t <= 0, 1 for t >= 1, C^inf monotone in between.
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

const SpectralField& selected(const State& st, FieldSelector sel) {
    switch (sel) {
    case FieldSelector::Q: return st.q;
    case FieldSelector::U: return st.u;
    case FieldSelector::C:
        if (!st.c_minus_one)
            throw Error(ErrorCode::MissingComponent,
                        "trajectory state lacks the order parameter");
        return *st.c_minus_one;
    }
    throw Error(ErrorCode::MissingComponent, "bad selector");
}

double trapezoid(const std::vector<double>& times,
                 const std::vector<double>& vals) {
    double s = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i)
        s += 0.5 * (vals[i] + vals[i - 1]) * (times[i] - times[i - 1]);
    return s;
}

} // namespace

double lp_chi(double r) {
    // 1 on [0, 3/4], glue on (3/4, 4/3), 0 beyond; nonincreasing.
    return smooth_step((4.0 / 3.0 - std::abs(r)) / (4.0 / 3.0 - 3.0 / 4.0));
}

double lp_phi(double r) { return lp_chi(r / 2.0) - lp_chi(r); }

LittlewoodPaley::LittlewoodPaley(const GridSpec& grid) : grid_(grid) {
    const double xi_min = grid.dxi();
    const double xi_max =
        grid.dxi() * (grid.n / 2) * std::sqrt(static_cast<double>(grid.d));
    j_lo_ = static_cast<int>(std::floor(std::log2(xi_min / kLpAnnulusHi)));
    j_hi_ = static_cast<int>(std::ceil(std::log2(xi_max / kLpAnnulusLo)));

    const std::size_t total = grid.size();
    weights_.assign(static_cast<std::size_t>(j_hi_ - j_lo_ + 1),
                    std::vector<double>(total, 0.0));
    for (std::size_t k = 0; k < total; ++k) {
        const double norm = std::sqrt(grid.xi_norm2(k));
        if (norm == 0.0) continue;
        for (int j = j_lo_; j <= j_hi_; ++j) {
            const double w = lp_phi(std::ldexp(norm, -j));
            if (w != 0.0)
                weights_[static_cast<std::size_t>(j - j_lo_)][k] = w;
        }
    }
}

SpectralField LittlewoodPaley::block(const SpectralField& f, int j) const {
    SpectralField out = f;
    if (j < j_lo_ || j > j_hi_) {
        for (auto& comp : out.comps) std::fill(comp.begin(), comp.end(), Complex(0));
        return out;
    }
    const auto& w = weights_[static_cast<std::size_t>(j - j_lo_)];
    for (auto& comp : out.comps)
        for (std::size_t k = 0; k < comp.size(); ++k) comp[k] *= w[k];
    return out;
}

double LittlewoodPaley::block_l2(const SpectralField& f, int j) const {
    if (j < j_lo_ || j > j_hi_) return 0.0;
    const auto& w = weights_[static_cast<std::size_t>(j - j_lo_)];
    double s = 0.0;
    for (const auto& comp : f.comps)
        for (std::size_t k = 0; k < comp.size(); ++k)
            s += w[k] * w[k] * std::norm(comp[k]);
    return std::sqrt(s * std::pow(grid_.L, grid_.d));
}

double LittlewoodPaley::besov_norm(const SpectralField& f, double s) const {
    double sum = 0.0;
    for (int j = j_lo_; j <= j_hi_; ++j)
        sum += std::pow(2.0, j * s) * block_l2(f, j);
    return sum;
}

double LittlewoodPaley::hybrid_norm(const SpectralField& f, double s,
                                    const CouplingAlpha& alpha) const {
    const double a2 = alpha.alpha * alpha.alpha;
    double sum = 0.0;
    for (int j = j_lo_; j <= j_hi_; ++j) {
        const double weight = std::min(a2, std::ldexp(1.0, 2 * j));
        sum += weight * std::pow(2.0, j * s) * block_l2(f, j);
    }
    return sum;
}

const LittlewoodPaley& lp_for(const GridSpec& grid) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, double>, LittlewoodPaley> cache;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_tuple(grid.d, grid.n, grid.L);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, LittlewoodPaley(grid)).first;
    return it->second;
}

SpectralField dyadic_block(const SpectralField& f, int j) {
    return lp_for(f.grid).block(f, j);
}

double besov_norm(const SpectralField& f, double s) {
    return lp_for(f.grid).besov_norm(f, s);
}

double hybrid_norm(const SpectralField& f, double s,
                   const CouplingAlpha& alpha) {
    return lp_for(f.grid).hybrid_norm(f, s, alpha);
}

double tilde_norm(const Trajectory& traj, FieldSelector sel, double s,
                  TimeExponent rho, const NormKind& kind) {
    if (traj.times.empty())
        throw Error(ErrorCode::EmptyTrajectory, "tilde_norm: empty trajectory");
    const LittlewoodPaley& lp = lp_for(selected(traj.states.front(), sel).grid);
    const double a2 = kind.alpha * kind.alpha;

    double sum = 0.0;
    std::vector<double> per_time(traj.size());
    for (int j = lp.j_lo(); j <= lp.j_hi(); ++j) {
        for (std::size_t i = 0; i < traj.size(); ++i)
            per_time[i] = lp.block_l2(selected(traj.states[i], sel), j);
        const double agg = (rho == TimeExponent::LInf)
                               ? *std::max_element(per_time.begin(), per_time.end())
                               : trapezoid(traj.times, per_time);
        double weight = std::pow(2.0, j * s);
        if (kind.hybrid) weight *= std::min(a2, std::ldexp(1.0, 2 * j));
        sum += weight * agg;
    }
    return sum;
}

double time_lp_besov(const Trajectory& traj, FieldSelector sel, double s,
                     TimeExponent rho) {
    if (traj.times.empty())
        throw Error(ErrorCode::EmptyTrajectory, "time_lp_besov: empty trajectory");
    std::vector<double> vals(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i)
        vals[i] = besov_norm(selected(traj.states[i], sel), s);
    if (rho == TimeExponent::LInf)
        return *std::max_element(vals.begin(), vals.end());
    return trapezoid(traj.times, vals);
}

double e_norm(const Trajectory& traj, double s, const CouplingAlpha& alpha,
              const FluidParams& params) {
    const NormKind plain = NormKind::plain();
    const NormKind hyb = NormKind::hybrid_alpha(alpha.alpha);
    double sum = 0.0;
    sum += tilde_norm(traj, FieldSelector::U, s - 1, TimeExponent::LInf, plain);
    sum += tilde_norm(traj, FieldSelector::Q, s - 1, TimeExponent::LInf, plain);
    sum += params.nu *
           tilde_norm(traj, FieldSelector::Q, s, TimeExponent::LInf, plain);
    sum += params.nu0 *
           tilde_norm(traj, FieldSelector::U, s + 1, TimeExponent::L1, plain);
    sum += params.nu *
           tilde_norm(traj, FieldSelector::Q, s - 1, TimeExponent::L1, hyb);
    sum += params.nu * params.nu *
           tilde_norm(traj, FieldSelector::Q, s, TimeExponent::L1, hyb);
    return sum;
}

double f_norm(const Trajectory& traj, double s, const CouplingAlpha& alpha,
              const FluidParams& params) {
    const NormKind plain = NormKind::plain();
    const NormKind hyb = NormKind::hybrid_alpha(alpha.alpha);
    double sum = e_norm(traj, s, alpha, params);
    sum += tilde_norm(traj, FieldSelector::C, s - 1, TimeExponent::LInf, plain);
    sum += params.nu *
           tilde_norm(traj, FieldSelector::C, s, TimeExponent::LInf, plain);
    sum += params.nu *
           tilde_norm(traj, FieldSelector::C, s - 1, TimeExponent::L1, hyb);
    sum += params.nu * params.nu *
           tilde_norm(traj, FieldSelector::C, s, TimeExponent::L1, hyb);
    return sum;
}

} // namespace koplab

#include "koplab/capi.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "koplab/experiment.hpp"
#include "koplab/solver.hpp"

struct koplab_config {
    koplab::ExperimentConfig cfg;
};

namespace {

thread_local std::string g_last_error;

constexpr int kOk = 0;
constexpr int kToleranceFailure = 2;
constexpr int kFailure = 3;

int fail(const std::string& msg) {
    g_last_error = msg;
    return kFailure;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const koplab::Error& e) {
        return fail(std::string(koplab::error_code_name(e.code())) + ": " +
                    e.what());
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

/// Writes through `emit` to csv_path, or to stdout when csv_path is "-".
template <typename Emit>
int with_output(const char* csv_path, Emit&& emit) {
    if (csv_path && std::string(csv_path) == "-") {
        emit(std::cout);
        return kOk;
    }
    std::ofstream out(csv_path ? csv_path : "");
    if (!out) return fail("cannot open output file");
    emit(out);
    return kOk;
}

} // namespace

extern "C" {

int koplab_config_load(const char* path, koplab_config** out) {
    if (!path || !out) return fail("null argument");
    return guarded([&] {
        *out = new koplab_config{koplab::load_config(path)};
        return kOk;
    });
}

int koplab_config_parse(const char* text, koplab_config** out) {
    if (!text || !out) return fail("null argument");
    return guarded([&] {
        *out = new koplab_config{koplab::parse_config_text(text)};
        return kOk;
    });
}

void koplab_config_free(koplab_config* cfg) { delete cfg; }

int koplab_config_set_alphas(koplab_config* cfg, const double* alphas, int n) {
    if (!cfg || !alphas || n <= 0) return fail("null argument");
    return guarded([&] {
        std::vector<double> list(alphas, alphas + n);
        for (int i = 1; i < n; ++i)
            if (!(list[static_cast<std::size_t>(i)] >
                  list[static_cast<std::size_t>(i - 1)]))
                throw koplab::Error(koplab::ErrorCode::ParameterOutOfRange,
                                    "alpha list must be strictly increasing");
        for (double a : list)
            if (!(a > 0))
                throw koplab::Error(koplab::ErrorCode::ParameterOutOfRange,
                                    "alpha must be > 0");
        cfg->cfg.alphas = std::move(list);
        return kOk;
    });
}

int koplab_run_kernel_validate(const int* dims, int ndims,
                               const char* csv_path) {
    if (!dims || ndims <= 0) return fail("null argument");
    return guarded([&] {
        const std::vector<int> d(dims, dims + ndims);
        const koplab::KernelReport rep = koplab::run_kernel_validation(d);
        const int status = with_output(csv_path, [&](std::ostream& out) {
            koplab::write_kernel_csv(out, rep);
        });
        if (status != kOk) return status;
        return rep.ok ? kOk : kToleranceFailure;
    });
}

int koplab_run_linear_validate(const koplab_config* cfg,
                               const char* csv_path) {
    if (!cfg) return fail("null argument");
    return guarded([&] {
        const koplab::LinearReport rep = koplab::run_linear_validation(cfg->cfg);
        const int status = with_output(csv_path, [&](std::ostream& out) {
            koplab::write_linear_csv(out, rep);
        });
        if (status != kOk) return status;
        return rep.ok ? kOk : kToleranceFailure;
    });
}

int koplab_run_thresholds(const koplab_config* cfg, const char* csv_path) {
    if (!cfg) return fail("null argument");
    return guarded([&] {
        const auto rows =
            koplab::run_threshold_report(cfg->cfg.fluid, cfg->cfg.alphas);
        return with_output(csv_path, [&](std::ostream& out) {
            koplab::write_threshold_csv(out, rows);
        });
    });
}

int koplab_run_simulate(const koplab_config* cfg, const char* model,
                        double alpha, const char* out_dir) {
    if (!cfg || !model || !out_dir) return fail("null argument");
    return guarded([&] {
        const std::string kind_name(model);
        koplab::ModelKind kind;
        if (kind_name == "op")
            kind = koplab::ModelKind::OrderParameter;
        else if (kind_name == "k")
            kind = koplab::ModelKind::Korteweg;
        else
            return fail("model must be \"op\" or \"k\"");

        const koplab::ExperimentConfig& c = cfg->cfg;
        const koplab::CouplingAlpha a(alpha);
        const koplab::State s0 = koplab::make_initial_data(
            c.grid, c.amplitude, c.j_lo, c.j_hi, c.seed);
        const koplab::Trajectory traj =
            koplab::integrate(s0, c.fluid, a, kind, c.step);

        const std::string dir(out_dir);
        std::ofstream manifest(dir + "/manifest.csv");
        if (!manifest) return fail("cannot open manifest in " + dir);
        manifest << "# schema: simulate_manifest,1\n";
        manifest << "t,file,mean_q,l2_q,l2_u\n";
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const koplab::State& s = traj.states[i];
            char name[64];
            std::snprintf(name, sizeof(name), "snap_%05zu", i);
            const std::string base = std::string(name);
            koplab::write_snapshot_file(dir + "/" + base + "_q.snap", s.q,
                                        "q", traj.times[i]);
            koplab::write_snapshot_file(dir + "/" + base + "_u.snap", s.u,
                                        "u", traj.times[i]);
            if (s.c_minus_one)
                koplab::write_snapshot_file(dir + "/" + base + "_c.snap",
                                            *s.c_minus_one, "c",
                                            traj.times[i]);
            manifest << traj.times[i] << ',' << base << ','
                     << koplab::field_mean(s.q) << ',' << koplab::l2_norm(s.q)
                     << ',' << koplab::l2_norm(s.u) << '\n';
        }
        return kOk;
    });
}

int koplab_run_sweep(const koplab_config* cfg, const char* csv_path) {
    if (!cfg) return fail("null argument");
    return guarded([&] {
        const koplab::RateReport rep = koplab::run_convergence_sweep(cfg->cfg);
        const int status = with_output(csv_path, [&](std::ostream& out) {
            koplab::write_sweep_csv(out, rep);
        });
        if (status != kOk) return status;
        for (const auto& row : rep.rows)
            if (row.failed) return fail("sweep run failed: " + row.error);

        // Tolerance gate: the alpha^{-2} slope within +-0.3, the alpha^{-h}
        // slope at most -h + 0.2, both monotone diagnostics decreasing.
        const bool ok = rep.has_cp_fit && rep.has_f_fit &&
                        std::abs(rep.cp_fit.slope + 2.0) <= 0.3 &&
                        rep.f_fit.slope <= -rep.h + 0.2 &&
                        rep.cp_sup_decreasing && rep.f_h0_decreasing;
        return ok ? kOk : kToleranceFailure;
    });
}

const char* koplab_last_error(void) { return g_last_error.c_str(); }

} // extern "C"

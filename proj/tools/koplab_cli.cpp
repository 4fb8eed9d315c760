#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "koplab/capi.h"

namespace {

int finish(int status) {
    if (status == 3) std::fprintf(stderr, "error: %s\n", koplab_last_error());
    return status;
}

struct ConfigGuard {
    koplab_config* cfg = nullptr;
    ~ConfigGuard() { koplab_config_free(cfg); }
};

int load(const std::string& path, ConfigGuard& guard) {
    return koplab_config_load(path.c_str(), &guard.cfg);
}

std::vector<double> split_doubles(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stod(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral laboratory for nonlocal capillary fluids"};
    app.require_subcommand(1);

    // kernel-validate
    auto* kernel = app.add_subcommand(
        "kernel-validate", "Check the interaction-kernel Fourier pair");
    std::string dims_arg = "1,2,3";
    std::string kernel_out = "-";
    kernel->add_option("--dims", dims_arg, "Comma list of dimensions");
    kernel->add_option("--out", kernel_out, "CSV path ('-' for stdout)");

    // linear-validate
    auto* linear = app.add_subcommand(
        "linear-validate", "Eigenstructure, semigroup, and decay envelopes");
    std::string linear_cfg, linear_out = "-";
    linear->add_option("--config", linear_cfg, "Config file")->required();
    linear->add_option("--out", linear_out, "CSV path ('-' for stdout)");

    // thresholds
    auto* thresholds =
        app.add_subcommand("thresholds", "Threshold table x_alpha, y_alpha, m");
    std::string thr_cfg, thr_alphas, thr_out = "-";
    thresholds->add_option("--config", thr_cfg, "Config file")->required();
    thresholds->add_option("--alphas", thr_alphas,
                           "Override alpha list (comma separated)");
    thresholds->add_option("--out", thr_out, "CSV path ('-' for stdout)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Single model run");
    std::string sim_cfg, sim_model, sim_dir = ".";
    double sim_alpha = 0.0;
    simulate->add_option("--config", sim_cfg, "Config file")->required();
    simulate->add_option("--model", sim_model, "'op' or 'k'")->required();
    simulate->add_option("--alpha", sim_alpha, "Coupling strength")->required();
    simulate->add_option("--out-dir", sim_dir, "Snapshot directory");

    // sweep
    auto* sweep =
        app.add_subcommand("sweep", "Convergence sweep over the alpha list");
    std::string sweep_cfg, sweep_out = "-";
    sweep->add_option("--config", sweep_cfg, "Config file")->required();
    sweep->add_option("--out", sweep_out, "CSV path ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    if (kernel->parsed()) {
        std::vector<int> dims;
        try {
            for (double v : split_doubles(dims_arg))
                dims.push_back(static_cast<int>(v));
        } catch (const std::exception&) {
            std::fprintf(stderr, "error: bad --dims list\n");
            return 3;
        }
        return finish(koplab_run_kernel_validate(
            dims.data(), static_cast<int>(dims.size()), kernel_out.c_str()));
    }

    if (linear->parsed()) {
        ConfigGuard guard;
        if (int rc = load(linear_cfg, guard)) return finish(rc);
        return finish(koplab_run_linear_validate(guard.cfg, linear_out.c_str()));
    }

    if (thresholds->parsed()) {
        ConfigGuard guard;
        if (int rc = load(thr_cfg, guard)) return finish(rc);
        if (!thr_alphas.empty()) {
            std::vector<double> alphas;
            try {
                alphas = split_doubles(thr_alphas);
            } catch (const std::exception&) {
                std::fprintf(stderr, "error: bad --alphas list\n");
                return 3;
            }
            if (int rc = koplab_config_set_alphas(
                    guard.cfg, alphas.data(), static_cast<int>(alphas.size())))
                return finish(rc);
        }
        return finish(koplab_run_thresholds(guard.cfg, thr_out.c_str()));
    }

    if (simulate->parsed()) {
        ConfigGuard guard;
        if (int rc = load(sim_cfg, guard)) return finish(rc);
        return finish(koplab_run_simulate(guard.cfg, sim_model.c_str(),
                                          sim_alpha, sim_dir.c_str()));
    }

    if (sweep->parsed()) {
        ConfigGuard guard;
        if (int rc = load(sweep_cfg, guard)) return finish(rc);
        return finish(koplab_run_sweep(guard.cfg, sweep_out.c_str()));
    }

    return 3;
}

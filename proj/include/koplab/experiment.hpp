#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "koplab/config.hpp"
#include "koplab/linear.hpp"
#include "koplab/rate.hpp"

namespace koplab {

struct KernelRow {
    int d = 1;
    double max_hankel_err = 0.0;   // worst |transform - (1+xi^2)^{-1}| on [0,8]
    double closed_form_err = 0.0;  // vs the d=1 / d=3 explicit kernels; 0 for d=2
    double lower_bound_margin = 0.0;  // min of e^x x^nu K_nu(x) - Gamma(nu) 2^{nu-1}
    bool ok = false;
};

struct KernelReport {
    std::vector<KernelRow> rows;
    bool ok = false;
};

KernelReport run_kernel_validation(const std::vector<int>& dims);
void write_kernel_csv(std::ostream& out, const KernelReport& rep);

struct LinearEnvelopeEntry {
    double alpha = 0.0;
    EnvelopeRow row;
};

struct LinearReport {
    std::vector<LinearEnvelopeEntry> rows;
    double max_oracle_err = 0.0;        // semigroup vs matrix exponential
    double max_trace_resid = 0.0;       // relative
    double max_det_resid = 0.0;         // relative
    double max_remvelocity_resid = 0.0; // relative, high-frequency samples
    double max_composition_err = 0.0;
    bool envelopes_ok = false;
    bool ok = false;
};

LinearReport run_linear_validation(const ExperimentConfig& cfg);
void write_linear_csv(std::ostream& out, const LinearReport& rep);

struct ThresholdRow {
    double alpha = 0.0;
    double x_alpha = 0.0;
    double y_alpha = 0.0;
    double m = 0.0;
    double M = 0.0;
    double y_ratio = 0.0;       // y_alpha / alpha^2
    bool y_bounds_ok = false;   // the regime-appropriate two-sided bound
    double x_inf_ratio = 0.0;   // x_alpha / (4p/(nu^2-4kappa)) when M > 1
    double bisect_rel_err = 0.0;
};

std::vector<ThresholdRow> run_threshold_report(const FluidParams& params,
                                               const std::vector<double>& alphas);
void write_threshold_csv(std::ostream& out,
                         const std::vector<ThresholdRow>& rows);

struct SweepRow {
    double alpha = 0.0;
    bool failed = false;
    std::string error;
    double cp_l1 = 0.0;    // nu L1 B^{d/2-1} + nu^2 L1 B^{d/2} of c - rho
    double cp_sup = 0.0;   // sup_t B^{d/2-1} of c - rho
    double f_diff = 0.0;   // F_alpha^{d/2-h} of the difference trajectory
    double f_diff_h0 = 0.0;  // F_alpha^{d/2}
};

struct RateReport {
    std::vector<SweepRow> rows;
    double h = 0.5;
    bool has_cp_fit = false;
    bool has_f_fit = false;
    RateFit cp_fit;  // slope target: -2
    RateFit f_fit;   // slope target: <= -h
    bool cp_sup_decreasing = false;
    bool f_h0_decreasing = false;
};

/// Solves the Korteweg reference once, then each order-parameter run
/// (concurrently, capped by the KOPLAB_WORKERS environment variable), forms
/// the difference trajectories at the shared recording times, and fits the
/// log-log slopes. Solver failures mark their row instead of aborting the
/// sweep.
RateReport run_convergence_sweep(const ExperimentConfig& cfg);
void write_sweep_csv(std::ostream& out, const RateReport& rep);

/// Worker cap: KOPLAB_WORKERS when set and positive, else the hardware
/// concurrency, always at least 1.
int worker_limit();

} // namespace koplab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlslab/effective_dynamics.hpp"
#include "nlslab/modulation.hpp"
#include "nlslab/nls_solver.hpp"

namespace nlslab {

/// One output frame: PDE-extracted vs effective parameters plus
/// diagnostics. gamma_pde is unwrapped; a mod-2pi copy is emitted too.
struct ComparisonRow {
    double t = 0.0;
    double a_pde = 0.0, v_pde = 0.0, gamma_pde = 0.0, mu_pde = 1.0;
    double a_eff = 0.0, v_eff = 0.0, gamma_eff = 0.0;
    double h1_err = 0.0;  // H1 distance to the effective-parameter soliton
    double w_h1 = 0.0;    // H1 norm of the decomposition residual
    double mass = 0.0, h_q = 0.0, classical_energy = 0.0;
};

struct ReportSummary {
    double sup_h1_err = 0.0;
    double sup_w_h1 = 0.0;
    double sup_center_dev = 0.0;  // sup |a_pde - a_eff|
    double mass_drift = 0.0;      // relative
    double energy_drift = 0.0;    // absolute
    std::optional<double> measured_period;
    std::optional<double> predicted_period;
    std::optional<double> measured_turning;
    std::optional<double> predicted_turning;
    std::optional<double> max_dev_effective;  // fig2: vs effective-Hamiltonian track
    std::optional<double> max_dev_newton;     // fig2: vs bare-Newton track
    std::optional<double> first_cycle_end;
};

struct ComparisonReport {
    std::string preset;
    SimConfig sim;
    double snapshot_dt = 0.0;
    double effective_dt = 0.0;
    std::vector<ComparisonRow> rows;
    ReportSummary summary;
};

struct ExperimentConfig {
    std::string preset = "custom";
    SimConfig sim;
    double effective_dt = 0.01;
    double snapshot_dt = 0.5;
    std::string out_dir = ".";
    std::vector<std::string> formats = {"csv", "json"};
    double h = 0.0;  // slowly-varying scale, fig2 runs
};

/// Preset parameter blocks: fig1, fig2, fig2-h4, fig3, fig3-q9.
ExperimentConfig preset_config(const std::string& name);

/// Full pipeline: evolve the PDE, decompose every snapshot (warm-started),
/// integrate the effective flow, assemble rows and summary.
ComparisonReport run_comparison(const ExperimentConfig& cfg);

struct ScalingPoint {
    double q = 0.0;
    double horizon = 0.0;
    double sup_w_h1 = 0.0;
    double sup_center_dev = 0.0;
};

struct ScalingSummary {
    std::vector<ScalingPoint> points;
    double slope_w_h1 = 0.0;        // d log sup||w|| / d log |q|
    double slope_center_dev = 0.0;  // d log sup|a - a_eff| / d log |q|
};

/// Sweep over delta strengths with the fig1 initial data; horizon per
/// run is min(t_budget, |q|^{-1/2} log(1/|q|)).
ScalingSummary run_scaling(const std::vector<double>& q_list, double t_budget,
                           double snapshot_dt = 0.5);

void emit_csv(const ComparisonReport& report, const std::string& path);
void emit_json(const ComparisonReport& report, const std::string& path);
/// Two plots: <prefix>_center.svg and <prefix>_error.svg.
void emit_svg(const ComparisonReport& report, const std::string& path_prefix);

/// Parse a CSV produced by emit_csv (for round-trip checks).
std::vector<ComparisonRow> read_csv(const std::string& path);

}  // namespace nlslab

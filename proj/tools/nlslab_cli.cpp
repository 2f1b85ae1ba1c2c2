// nlslab command-line driver.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 numerical failure
// (the failing stage is named on stderr).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nlslab/effective_dynamics.hpp"
#include "nlslab/experiment.hpp"
#include "nlslab/modulation.hpp"
#include "nlslab/nls_solver.hpp"
#include "nlslab/spectral_lab.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nlslab;

namespace {

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> formats = {"csv", "json"};
    std::optional<double> dt, grid_l, t_final, q, v0, a0, h;
    std::optional<int> grid_n;
    std::string potential;  // delta | sech2slow
    std::string preset_name;
    std::vector<double> q_list;  // scaling sweep
};

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--config", opt.config_path, "JSON file overriding any preset field");
    cmd->add_option("--out-dir", opt.out_dir, "output directory");
    cmd->add_option("--formats", opt.formats, "output formats (csv, json, svg)")->delimiter(',');
    cmd->add_option("--dt", opt.dt, "PDE time step");
    cmd->add_option("--grid-n", opt.grid_n, "number of grid points (even)");
    cmd->add_option("--grid-l", opt.grid_l, "grid half-length L");
    cmd->add_option("--t-final", opt.t_final, "final time");
    cmd->add_option("--q", opt.q, "delta potential strength");
    cmd->add_option("--v0", opt.v0, "initial soliton velocity");
    cmd->add_option("--a0", opt.a0, "initial soliton center");
    cmd->add_option("--potential", opt.potential, "potential kind")
        ->check(CLI::IsMember({"delta", "sech2slow"}));
    cmd->add_option("--h", opt.h, "slowly-varying scale for sech2slow");
}

WaveField sech2slow_profile(const GridSpec& grid, double h) {
    return sample_real([h](double x) { return -eta(h * x) * eta(h * x); }, grid);
}

void apply_json_overrides(ExperimentConfig& cfg, const json& j) {
    bool regrid = false;
    double gl = cfg.sim.grid.half_length;
    int gn = cfg.sim.grid.num_points;
    if (j.contains("grid_l")) { gl = j.at("grid_l").get<double>(); regrid = true; }
    if (j.contains("grid_n")) { gn = j.at("grid_n").get<int>(); regrid = true; }
    if (regrid) cfg.sim.grid = GridSpec::make(gl, gn);
    if (j.contains("dt")) cfg.sim.dt = j.at("dt").get<double>();
    if (j.contains("t_final")) cfg.sim.t_final = j.at("t_final").get<double>();
    if (j.contains("a0")) cfg.sim.initial.a = j.at("a0").get<double>();
    if (j.contains("v0")) cfg.sim.initial.v = j.at("v0").get<double>();
    if (j.contains("gamma0")) cfg.sim.initial.gamma = j.at("gamma0").get<double>();
    if (j.contains("mu0")) cfg.sim.initial.mu = j.at("mu0").get<double>();
    if (j.contains("h")) cfg.h = j.at("h").get<double>();
    if (j.contains("snapshot_dt")) cfg.snapshot_dt = j.at("snapshot_dt").get<double>();
    if (j.contains("effective_dt")) cfg.effective_dt = j.at("effective_dt").get<double>();
    if (j.contains("potential")) {
        const std::string kind = j.at("potential").get<std::string>();
        if (kind == "delta")
            cfg.sim.potential = PotentialSpec::delta(j.value("q", cfg.sim.potential.q));
        else if (kind == "sech2slow")
            cfg.sim.potential = PotentialSpec::sampled(sech2slow_profile(cfg.sim.grid, cfg.h),
                                                       "sech2slow", cfg.h);
        else
            throw CLI::ValidationError("config: unknown potential '" + kind + "'");
    } else if (j.contains("q") && cfg.sim.potential.kind == PotentialSpec::Kind::delta) {
        cfg.sim.potential = PotentialSpec::delta(j.at("q").get<double>());
    }
}

ExperimentConfig build_config(const Options& opt, const std::string& base_preset) {
    ExperimentConfig cfg = preset_config(base_preset);
    if (!opt.config_path.empty()) {
        std::ifstream is(opt.config_path);
        if (!is) throw CLI::ValidationError("cannot open config file " + opt.config_path);
        json j = json::parse(is);
        if (j.contains("preset") && base_preset == "custom")
            cfg = preset_config(j.at("preset").get<std::string>());
        apply_json_overrides(cfg, j);
    }
    bool regrid = false;
    double gl = cfg.sim.grid.half_length;
    int gn = cfg.sim.grid.num_points;
    if (opt.grid_l) { gl = *opt.grid_l; regrid = true; }
    if (opt.grid_n) { gn = *opt.grid_n; regrid = true; }
    if (regrid) cfg.sim.grid = GridSpec::make(gl, gn);
    if (opt.dt) cfg.sim.dt = *opt.dt;
    if (opt.t_final) cfg.sim.t_final = *opt.t_final;
    if (opt.a0) cfg.sim.initial.a = *opt.a0;
    if (opt.v0) cfg.sim.initial.v = *opt.v0;
    if (opt.h) cfg.h = *opt.h;
    if (!opt.potential.empty()) {
        if (opt.potential == "delta")
            cfg.sim.potential = PotentialSpec::delta(opt.q.value_or(cfg.sim.potential.q));
        else
            cfg.sim.potential =
                PotentialSpec::sampled(sech2slow_profile(cfg.sim.grid, cfg.h), "sech2slow", cfg.h);
    } else if (opt.q && cfg.sim.potential.kind != PotentialSpec::Kind::sampled) {
        cfg.sim.potential = PotentialSpec::delta(*opt.q);
    } else if (regrid && cfg.sim.potential.kind == PotentialSpec::Kind::sampled) {
        cfg.sim.potential =
            PotentialSpec::sampled(sech2slow_profile(cfg.sim.grid, cfg.h), "sech2slow", cfg.h);
    }
    cfg.out_dir = opt.out_dir;
    cfg.formats = opt.formats;
    try {
        cfg.sim.validate();
    } catch (const std::exception& e) {
        throw CLI::ValidationError(e.what());
    }
    return cfg;
}

void archive_config(const ExperimentConfig& cfg, const std::string& stem) {
    json j;
    j["preset"] = cfg.preset;
    j["grid_l"] = cfg.sim.grid.half_length;
    j["grid_n"] = cfg.sim.grid.num_points;
    j["dt"] = cfg.sim.dt;
    j["t_final"] = cfg.sim.t_final;
    j["a0"] = cfg.sim.initial.a;
    j["v0"] = cfg.sim.initial.v;
    j["gamma0"] = cfg.sim.initial.gamma;
    j["mu0"] = cfg.sim.initial.mu;
    j["potential"] = cfg.sim.potential.kind == PotentialSpec::Kind::sampled ? "sech2slow" : "delta";
    j["q"] = cfg.sim.potential.q;
    j["h"] = cfg.h;
    j["snapshot_dt"] = cfg.snapshot_dt;
    j["effective_dt"] = cfg.effective_dt;
    std::ofstream os(fs::path(cfg.out_dir) / (stem + ".config.json"));
    os << j.dump(2) << '\n';
}

void emit_report(const ComparisonReport& report, const ExperimentConfig& cfg,
                 const std::string& stem) {
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);
    for (const auto& f : cfg.formats) {
        if (f == "csv")
            emit_csv(report, (dir / (stem + ".csv")).string());
        else if (f == "json")
            emit_json(report, (dir / (stem + ".json")).string());
        else if (f == "svg")
            emit_svg(report, (dir / stem).string());
        else
            throw CLI::ValidationError("unknown format '" + f + "'");
    }
    archive_config(cfg, stem);
}

void print_summary(const ComparisonReport& report) {
    const ReportSummary& s = report.summary;
    std::printf("rows              %zu\n", report.rows.size());
    std::printf("sup h1_err        %.6g\n", s.sup_h1_err);
    std::printf("sup ||w||_H1      %.6g\n", s.sup_w_h1);
    std::printf("sup |a - a_eff|   %.6g\n", s.sup_center_dev);
    std::printf("mass drift (rel)  %.3g\n", s.mass_drift);
    std::printf("energy drift      %.3g\n", s.energy_drift);
    if (s.measured_period)
        std::printf("period measured %.6g  predicted %.6g\n", *s.measured_period,
                    s.predicted_period.value_or(0.0));
    if (s.predicted_turning)
        std::printf("turning measured %s  predicted %.6g\n",
                    s.measured_turning ? std::to_string(*s.measured_turning).c_str() : "(pass-over)",
                    *s.predicted_turning);
    else if (s.measured_turning)
        std::printf("turning measured %.6g  predicted (pass-over)\n", *s.measured_turning);
    if (s.max_dev_effective)
        std::printf("first-cycle dev: effective %.6g  bare-newton %.6g\n", *s.max_dev_effective,
                    s.max_dev_newton.value_or(0.0));
}

int run_compare(const Options& opt, const std::string& base_preset) {
    ExperimentConfig cfg = build_config(opt, base_preset);
    ComparisonReport report = run_comparison(cfg);
    emit_report(report, cfg, cfg.preset);
    print_summary(report);
    return 0;
}

int run_simulate(const Options& opt) {
    ExperimentConfig cfg = build_config(opt, "custom");
    SimConfig sim = cfg.sim;
    sim.snapshot_stride =
        std::max(1, static_cast<int>(std::llround(cfg.snapshot_dt / sim.dt)));
    fs::create_directories(cfg.out_dir);
    std::ofstream os(fs::path(cfg.out_dir) / "simulate.csv");
    os << "t,mass,H_q,re_u0,im_u0\r\n";
    evolve_with(sim, [&os](const Snapshot& snap) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\r\n", snap.t, snap.mass,
                      snap.energy, snap.field.at_origin().real(), snap.field.at_origin().imag());
        os << buf;
    });
    std::printf("wrote %s\n", (fs::path(cfg.out_dir) / "simulate.csv").c_str());
    return 0;
}

int run_effective(const Options& opt) {
    ExperimentConfig cfg = build_config(opt, "custom");
    EffectiveState s0;
    s0.a = cfg.sim.initial.a;
    s0.v = cfg.sim.initial.v;
    s0.mu = cfg.sim.initial.mu;
    EffectiveRhs rhs;
    if (cfg.sim.potential.kind == PotentialSpec::Kind::sampled) {
        PotentialSpec pot = cfg.sim.potential;
        rhs = [pot](const EffectiveState& s) { return rhs_general(s, pot); };
    } else {
        const double q = cfg.sim.potential.q;
        rhs = [q](const EffectiveState& s) { return rhs_delta(s, q); };
    }
    EffectiveTrajectory traj = integrate_effective(s0, rhs, cfg.sim.t_final, cfg.effective_dt);
    fs::create_directories(cfg.out_dir);
    std::ofstream os(fs::path(cfg.out_dir) / "effective.csv");
    os << "t,a,v,gamma,mu\r\n";
    for (const auto& s : traj.states) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\r\n", s.t, s.a, s.v, s.gamma,
                      s.mu);
        os << buf;
    }
    std::printf("wrote %s (%zu states)\n", (fs::path(cfg.out_dir) / "effective.csv").c_str(),
                traj.states.size());
    return 0;
}

int run_spectral(const Options& opt) {
    const GridSpec grid = GridSpec::make(opt.grid_l.value_or(20.0), opt.grid_n.value_or(1024));
    const ConstantTable table = lina_constants();
    std::printf("rho0 = %.15g (closed form %.15g)\n", table.rho0, rho0());
    for (int i = 0; i < 3; ++i)
        std::printf("case %d: c0=%.15g c1=%.15g c2=%.15g -> c3=%.15g\n", i + 1, table.cases[i].c0,
                    table.cases[i].c1, table.cases[i].c2, table.cases[i].c3());
    std::printf("H1 coercivity constant  = %.15g\n", h1_coercivity_constant());
    std::printf("d/dx coercivity constant = %.15g\n", dx_coercivity_constant());
    for (BlockSign sign : {BlockSign::plus, BlockSign::minus}) {
        OperatorMatrix op = assemble(sign, grid);
        auto pairs = smallest_eigenpairs(op, 4);
        std::printf("L%c lowest eigenvalues:", sign == BlockSign::plus ? '+' : '-');
        for (const auto& p : pairs) std::printf(" %.9g", p.value);
        std::printf("\n");
    }
    return 0;
}

int run_period(const Options& opt) {
    if (!opt.q) throw CLI::ValidationError("period: --q is required");
    const double q = *opt.q;
    if (q < 0.0) {
        const double a0 = opt.a0.value_or(-3.0);
        std::printf("oscillation period (a0=%g, q=%g): %.12g\n", a0, q,
                    oscillation_period(a0, q));
    } else {
        if (!opt.v0) throw CLI::ValidationError("period: --v0 is required for q > 0");
        auto tp = turning_point(*opt.v0, q);
        if (tp)
            std::printf("turning point |a| (v=%g, q=%g): %.12g\n", *opt.v0, q, *tp);
        else
            std::printf("no turning point (v=%g >= sqrt(q)=%g): soliton passes over\n", *opt.v0,
                        std::sqrt(q));
    }
    return 0;
}

int run_scaling_cmd(const Options& opt) {
    std::vector<double> qs = opt.q_list;
    if (qs.empty()) qs = {-0.01, -0.0025};
    ScalingSummary sum = run_scaling(qs, opt.t_final.value_or(200.0));
    std::printf("q,horizon,sup_w_h1,sup_center_dev\n");
    for (const auto& p : sum.points)
        std::printf("%.17g,%.17g,%.17g,%.17g\n", p.q, p.horizon, p.sup_w_h1, p.sup_center_dev);
    std::printf("slope ||w||_H1 vs |q|: %.4g\n", sum.slope_w_h1);
    std::printf("slope |a-a_eff| vs |q|: %.4g\n", sum.slope_center_dev);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlinear Schroedinger soliton / delta-potential laboratory"};
    app.set_help_flag("--help", "print help");  // short -h would clash with --h
    app.require_subcommand(1);

    Options opt;
    auto* simulate = app.add_subcommand("simulate", "evolve the PDE, dump conserved quantities");
    auto* effective = app.add_subcommand("effective", "integrate the effective parameter flow");
    auto* compare = app.add_subcommand("compare", "PDE vs effective dynamics, full report");
    auto* spectral = app.add_subcommand("spectral", "spectral constants and L+- eigenvalues");
    auto* period = app.add_subcommand("period", "closed-form period / turning-point oracles");
    auto* scaling = app.add_subcommand("scaling", "small-|q| error-scaling sweep");
    auto* preset = app.add_subcommand("preset", "run a named preset (fig1, fig2, fig2-h4, fig3, fig3-q9)");
    for (CLI::App* c : {simulate, effective, compare, spectral, period, scaling, preset})
        add_common_flags(c, opt);
    preset->add_option("name", opt.preset_name, "preset name")->required();
    scaling->add_option("--q-list", opt.q_list, "delta strengths for the sweep")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*simulate) return run_simulate(opt);
        if (*effective) return run_effective(opt);
        if (*compare) return run_compare(opt, "custom");
        if (*spectral) return run_spectral(opt);
        if (*period) return run_period(opt);
        if (*scaling) return run_scaling_cmd(opt);
        if (*preset) return run_compare(opt, opt.preset_name);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

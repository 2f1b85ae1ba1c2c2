#include "nlslab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace nlslab {

namespace {

constexpr const char* kVersion = "0.1.0";

const char* kColumns =
    "t,a_pde,v_pde,gamma_pde,mu_pde,a_eff,v_eff,gamma_eff,h1_err,w_h1,mass,H_q,"
    "classical_energy,gamma_pde_mod2pi";

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double mod_2pi(double x) {
    const double tau = 2.0 * std::numbers::pi;
    double m = std::fmod(x, tau);
    if (m < 0) m += tau;
    return m;
}

WaveField sech2_slow_profile(const GridSpec& grid, double h) {
    return sample_real([h](double x) { return -eta(h * x) * eta(h * x); }, grid);
}

EffectiveRhs rhs_for(const PotentialSpec& pot) {
    switch (pot.kind) {
        case PotentialSpec::Kind::delta: {
            const double q = pot.q;
            return [q](const EffectiveState& s) { return rhs_delta(s, q); };
        }
        case PotentialSpec::Kind::sampled:
            return [pot](const EffectiveState& s) { return rhs_general(s, pot); };
        default:
            return [](const EffectiveState& s) { return rhs_delta(s, 0.0); };
    }
}

// For a start-at-rest oscillation v goes 0 -> + -> - over one cycle, so the
// first upward zero crossing of v marks the end of the first full cycle.
std::optional<double> first_cycle_end(const EffectiveTrajectory& traj) {
    for (std::size_t i = 1; i < traj.states.size(); ++i) {
        const double v0 = traj.states[i - 1].v;
        const double v1 = traj.states[i].v;
        if (v0 < 0.0 && v1 >= 0.0) {
            const double f = v0 / (v0 - v1);
            return traj.states[i - 1].t + f * traj.dt;
        }
    }
    return std::nullopt;
}

std::vector<double> zero_crossings(const std::vector<ComparisonRow>& rows, bool upward) {
    std::vector<double> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double a0 = upward ? rows[i - 1].a_pde : -rows[i - 1].a_pde;
        const double a1 = upward ? rows[i].a_pde : -rows[i].a_pde;
        if (a0 < 0.0 && a1 >= 0.0) {
            const double f = a0 / (a0 - a1);
            out.push_back(rows[i - 1].t + f * (rows[i].t - rows[i - 1].t));
        }
    }
    return out;
}

// Full period from two upward crossings when available; otherwise the
// potential is even in a, so up-to-down crossing spacing is half a period.
std::optional<double> measured_period(const std::vector<ComparisonRow>& rows) {
    const auto ups = zero_crossings(rows, true);
    if (ups.size() >= 2) return ups[1] - ups[0];
    if (ups.size() == 1) {
        for (double d : zero_crossings(rows, false))
            if (d > ups[0]) return 2.0 * (d - ups[0]);
    }
    return std::nullopt;
}

}  // namespace

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;
    cfg.preset = name;
    // N chosen so the first split-step resonance (k^2 dt/2 = 2pi) sits above
    // the Nyquist wavenumber at dt = 1e-3; the delta spike couples all modes.
    cfg.sim.grid = GridSpec::make(30.0, 2048);
    cfg.sim.dt = 1e-3;
    cfg.effective_dt = 0.01;
    if (name == "fig1") {
        cfg.sim.potential = PotentialSpec::delta(-0.01);
        cfg.sim.initial = {-3.0, 0.0, 0.0, 1.0};
        cfg.sim.t_final = 1000.0;
        cfg.snapshot_dt = 0.5;
    } else if (name == "fig2" || name == "fig2-h4") {
        cfg.h = (name == "fig2") ? 0.2 : 0.25;
        cfg.sim.potential = PotentialSpec::sampled(sech2_slow_profile(cfg.sim.grid, cfg.h),
                                                   "sech2slow", cfg.h);
        cfg.sim.initial = {-3.0, 0.0, 0.0, 1.0};
        cfg.sim.t_final = 40.0;
        cfg.snapshot_dt = 0.2;
    } else if (name == "fig3" || name == "fig3-q9") {
        cfg.sim.potential = PotentialSpec::delta(name == "fig3" ? 0.04 : 0.09);
        cfg.sim.initial = {-10.0, 0.1, 0.0, 1.0};
        cfg.sim.t_final = 250.0;
        cfg.snapshot_dt = 0.5;
    } else if (name == "custom") {
        // caller fills everything in
    } else {
        throw std::invalid_argument("preset_config: unknown preset '" + name + "'");
    }
    return cfg;
}

ComparisonReport run_comparison(const ExperimentConfig& cfg) {
    SimConfig sim = cfg.sim;
    const long stride = std::max<long>(1, std::llround(cfg.snapshot_dt / sim.dt));
    sim.snapshot_stride = static_cast<int>(stride);
    sim.validate();
    const double snap_dt = static_cast<double>(stride) * sim.dt;

    EffectiveState s0;
    s0.a = sim.initial.a;
    s0.v = sim.initial.v;
    s0.gamma = sim.initial.gamma;
    s0.mu = sim.initial.mu;
    EffectiveTrajectory eff;
    try {
        eff = integrate_effective(s0, rhs_for(sim.potential), sim.t_final, cfg.effective_dt);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("effective stage: ") + e.what());
    }

    ComparisonReport report;
    report.preset = cfg.preset;
    report.sim = sim;
    report.snapshot_dt = snap_dt;
    report.effective_dt = cfg.effective_dt;

    GroupElement warm = sim.initial;
    try {
        evolve_with(sim, [&](const Snapshot& snap) {
            Decomposition dec = decompose(snap.field, warm);
            if (!dec.converged)
                throw std::runtime_error("decomposition left the soliton neighborhood at t = " +
                                         std::to_string(snap.t) + " (defect " +
                                         std::to_string(dec.orthogonality_defect) + ")");
            warm = dec.g;
            const EffectiveState es = eff.at_time(snap.t);
            ComparisonRow row;
            row.t = snap.t;
            row.a_pde = dec.g.a;
            row.v_pde = dec.g.v;
            row.gamma_pde = dec.g.gamma;
            row.mu_pde = dec.g.mu;
            row.a_eff = es.a;
            row.v_eff = es.v;
            row.gamma_eff = es.gamma;
            row.h1_err = h1_error_to_soliton(snap.field, es.group());
            row.w_h1 = std::sqrt(h1_norm_sq(dec.w));
            row.mass = snap.mass;
            row.h_q = snap.energy;
            row.classical_energy = classical_energy(dec.g.a, dec.g.v,
                                                    sim.potential.kind == PotentialSpec::Kind::delta
                                                        ? sim.potential.q
                                                        : 0.0);
            report.rows.push_back(row);
        });
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("pde/decompose stage: ") + e.what());
    }

    // ---- summary ----
    ReportSummary& sm = report.summary;
    double mass0 = report.rows.front().mass;
    double e0 = report.rows.front().h_q;
    for (const auto& r : report.rows) {
        sm.sup_h1_err = std::max(sm.sup_h1_err, r.h1_err);
        sm.sup_w_h1 = std::max(sm.sup_w_h1, r.w_h1);
        sm.sup_center_dev = std::max(sm.sup_center_dev, std::abs(r.a_pde - r.a_eff));
        sm.mass_drift = std::max(sm.mass_drift, std::abs(r.mass - mass0) / mass0);
        sm.energy_drift = std::max(sm.energy_drift, std::abs(r.h_q - e0));
    }

    const PotentialSpec& pot = sim.potential;
    if (pot.kind == PotentialSpec::Kind::delta && pot.q < 0.0 && sim.initial.v == 0.0) {
        sm.predicted_period = oscillation_period(sim.initial.a, pot.q);
        sm.measured_period = measured_period(report.rows);
    }
    if (pot.kind == PotentialSpec::Kind::delta && pot.q > 0.0 && sim.initial.v > 0.0) {
        sm.predicted_turning = turning_point(sim.initial.v, pot.q);
        std::size_t imax = 0;
        for (std::size_t i = 0; i < report.rows.size(); ++i)
            if (report.rows[i].a_pde > report.rows[imax].a_pde) imax = i;
        const double amax = report.rows[imax].a_pde;
        // count it a turning only if the center retreats afterwards
        if (imax + 1 < report.rows.size() && report.rows.back().a_pde < amax - 0.2 && amax < 0.5)
            sm.measured_turning = std::abs(amax);
    }
    if (pot.kind == PotentialSpec::Kind::sampled && cfg.h > 0.0) {
        sm.first_cycle_end = first_cycle_end(eff);
        const double h = cfg.h;
        auto w_fun = [](double x) { return -eta(x) * eta(x); };
        auto dw_fun = [](double x) { return 2.0 * eta(x) * eta(x) * std::tanh(x); };
        EffectiveTrajectory newton = integrate_effective(
            s0,
            [&](const EffectiveState& s) { return rhs_bare_newton(s, w_fun, dw_fun, h); },
            sim.t_final, cfg.effective_dt);
        const double window = sm.first_cycle_end.value_or(sim.t_final);
        double dev_eff = 0.0, dev_newton = 0.0;
        for (const auto& r : report.rows) {
            if (r.t > window) break;
            dev_eff = std::max(dev_eff, std::abs(r.a_pde - r.a_eff));
            dev_newton = std::max(dev_newton, std::abs(r.a_pde - newton.at_time(r.t).a));
        }
        sm.max_dev_effective = dev_eff;
        sm.max_dev_newton = dev_newton;
    }
    return report;
}

ScalingSummary run_scaling(const std::vector<double>& q_list, double t_budget,
                           double snapshot_dt) {
    if (q_list.size() < 2) throw std::invalid_argument("run_scaling: need at least two q values");
    const double ratio = std::abs(q_list.front() / q_list.back());
    if (ratio < 4.0 && ratio > 0.25)
        throw std::invalid_argument("run_scaling: q values must span at least a 4x ratio");
    ScalingSummary out;
    out.points.resize(q_list.size());
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(q_list.size());
    for (std::size_t i = 0; i < q_list.size(); ++i) {
        workers.emplace_back([&, i] {
            try {
                const double q = q_list[i];
                ExperimentConfig cfg = preset_config("fig1");
                cfg.preset = "scaling";
                cfg.sim.potential = PotentialSpec::delta(q);
                cfg.snapshot_dt = snapshot_dt;
                const double horizon =
                    std::min(t_budget, std::log(1.0 / std::abs(q)) / std::sqrt(std::abs(q)));
                cfg.sim.t_final = horizon;
                ComparisonReport rep = run_comparison(cfg);
                out.points[i] = {q, horizon, rep.summary.sup_w_h1, rep.summary.sup_center_dev};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    auto slope = [&](auto field) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(out.points.size());
        for (const auto& p : out.points) {
            const double x = std::log(std::abs(p.q));
            const double y = std::log(std::max(field(p), 1e-300));
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    out.slope_w_h1 = slope([](const ScalingPoint& p) { return p.sup_w_h1; });
    out.slope_center_dev = slope([](const ScalingPoint& p) { return p.sup_center_dev; });
    return out;
}

void emit_csv(const ComparisonReport& report, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("emit_csv: cannot open " + path);
    os << kColumns << "\r\n";
    for (const auto& r : report.rows) {
        os << fmt17(r.t) << ',' << fmt17(r.a_pde) << ',' << fmt17(r.v_pde) << ','
           << fmt17(r.gamma_pde) << ',' << fmt17(r.mu_pde) << ',' << fmt17(r.a_eff) << ','
           << fmt17(r.v_eff) << ',' << fmt17(r.gamma_eff) << ',' << fmt17(r.h1_err) << ','
           << fmt17(r.w_h1) << ',' << fmt17(r.mass) << ',' << fmt17(r.h_q) << ','
           << fmt17(r.classical_energy) << ',' << fmt17(mod_2pi(r.gamma_pde)) << "\r\n";
    }
    if (!os) throw std::runtime_error("emit_csv: write failure on " + path);
}

void emit_json(const ComparisonReport& report, const std::string& path) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["preset"] = report.preset;
    j["grid"] = {{"half_length", report.sim.grid.half_length},
                 {"num_points", report.sim.grid.num_points}};
    j["dt"] = report.sim.dt;
    j["t_final"] = report.sim.t_final;
    j["snapshot_stride"] = report.sim.snapshot_stride;
    j["snapshot_dt"] = report.snapshot_dt;
    j["effective_dt"] = report.effective_dt;
    j["initial"] = {{"a", report.sim.initial.a},
                    {"v", report.sim.initial.v},
                    {"gamma", report.sim.initial.gamma},
                    {"mu", report.sim.initial.mu}};
    const PotentialSpec& pot = report.sim.potential;
    j["potential"] = {{"kind", pot.kind == PotentialSpec::Kind::none     ? "none"
                               : pot.kind == PotentialSpec::Kind::delta ? "delta"
                                                                        : "sampled"},
                      {"q", pot.q},
                      {"label", pot.label},
                      {"h", pot.h}};
    nlohmann::json sum;
    const ReportSummary& sm = report.summary;
    sum["sup_h1_err"] = sm.sup_h1_err;
    sum["sup_w_h1"] = sm.sup_w_h1;
    sum["sup_center_dev"] = sm.sup_center_dev;
    sum["mass_drift"] = sm.mass_drift;
    sum["energy_drift"] = sm.energy_drift;
    auto put_opt = [&sum](const char* key, const std::optional<double>& v) {
        if (v) sum[key] = *v;
    };
    put_opt("measured_period", sm.measured_period);
    put_opt("predicted_period", sm.predicted_period);
    put_opt("measured_turning", sm.measured_turning);
    put_opt("predicted_turning", sm.predicted_turning);
    put_opt("max_dev_effective", sm.max_dev_effective);
    put_opt("max_dev_newton", sm.max_dev_newton);
    put_opt("first_cycle_end", sm.first_cycle_end);
    j["summary"] = sum;

    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows)
        rows.push_back({r.t, r.a_pde, r.v_pde, r.gamma_pde, r.mu_pde, r.a_eff, r.v_eff,
                        r.gamma_eff, r.h1_err, r.w_h1, r.mass, r.h_q, r.classical_energy,
                        mod_2pi(r.gamma_pde)});
    j["columns"] = kColumns;
    j["rows"] = rows;

    std::ofstream os(path);
    if (!os) throw std::runtime_error("emit_json: cannot open " + path);
    os << j.dump(2) << '\n';
    if (!os) throw std::runtime_error("emit_json: write failure on " + path);
}

namespace {

void write_svg(const std::string& path, const std::string& title,
               const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>&
                   series) {
    constexpr double width = 900, height = 480, margin = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& [name, pts] : series)
        for (const auto& [x, y] : pts) {
            xmin = std::min(xmin, x); xmax = std::max(xmax, x);
            ymin = std::min(ymin, y); ymax = std::max(ymax, y);
        }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

    std::ofstream os(path);
    if (!os) throw std::runtime_error("emit_svg: cannot open " + path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
       << title << "</text>\n";
    // axes
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
       << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
       << height - margin << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << margin << "\" y=\"" << height - margin + 30 << "\" font-size=\"12\">"
       << fmt17(xmin).substr(0, 8) << "</text>\n";
    os << "<text x=\"" << width - margin - 40 << "\" y=\"" << height - margin + 30
       << "\" font-size=\"12\">" << fmt17(xmax).substr(0, 8) << "</text>\n";
    os << "<text x=\"4\" y=\"" << height - margin << "\" font-size=\"12\">"
       << fmt17(ymin).substr(0, 8) << "</text>\n";
    os << "<text x=\"4\" y=\"" << margin + 10 << "\" font-size=\"12\">"
       << fmt17(ymax).substr(0, 8) << "</text>\n";
    int ci = 0;
    for (const auto& [name, pts] : series) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[ci % 4] << "\" stroke-width=\"1.2\" points=\"";
        for (const auto& [x, y] : pts) os << px(x) << ',' << py(y) << ' ';
        os << "\"/>\n";
        os << "<text x=\"" << width - margin - 120 << "\" y=\"" << margin + 16 * (ci + 1)
           << "\" font-size=\"12\" fill=\"" << colors[ci % 4] << "\">" << name << "</text>\n";
        ++ci;
    }
    os << "</svg>\n";
}

}  // namespace

void emit_svg(const ComparisonReport& report, const std::string& path_prefix) {
    std::vector<std::pair<double, double>> a_pde, a_eff, h1, wh1;
    for (const auto& r : report.rows) {
        a_pde.emplace_back(r.t, r.a_pde);
        a_eff.emplace_back(r.t, r.a_eff);
        h1.emplace_back(r.t, r.h1_err);
        wh1.emplace_back(r.t, r.w_h1);
    }
    write_svg(path_prefix + "_center.svg", "soliton center vs time",
              {{"a_pde", a_pde}, {"a_eff", a_eff}});
    write_svg(path_prefix + "_error.svg", "error vs time", {{"h1_err", h1}, {"w_h1", wh1}});
}

std::vector<ComparisonRow> read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_csv: cannot open " + path);
    std::string line;
    std::getline(is, line);  // header
    std::vector<ComparisonRow> out;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) vals.push_back(std::strtod(cell.c_str(), nullptr));
        if (vals.size() < 13) throw std::runtime_error("read_csv: short row in " + path);
        ComparisonRow r;
        r.t = vals[0]; r.a_pde = vals[1]; r.v_pde = vals[2]; r.gamma_pde = vals[3];
        r.mu_pde = vals[4]; r.a_eff = vals[5]; r.v_eff = vals[6]; r.gamma_eff = vals[7];
        r.h1_err = vals[8]; r.w_h1 = vals[9]; r.mass = vals[10]; r.h_q = vals[11];
        r.classical_energy = vals[12];
        out.push_back(r);
    }
    return out;
}

}  // namespace nlslab

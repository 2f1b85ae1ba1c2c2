#include "nlslab/nls_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {

void SimConfig::validate() const {
    if (dt <= 0.0) throw std::invalid_argument("SimConfig: dt must be positive");
    if (dt > 0.5 * grid.spacing())
        throw std::invalid_argument("SimConfig: dt exceeds 0.5 * dx resolution guard");
    if (t_final < 0.0) throw std::invalid_argument("SimConfig: t_final must be >= 0");
    if (snapshot_stride <= 0)
        throw std::invalid_argument("SimConfig: snapshot_stride must be positive");
}

WaveField discrete_delta(const GridSpec& grid, double q) {
    WaveField out(grid);
    out[grid.origin_index()] = q / grid.spacing();
    return out;
}

namespace {

std::vector<double> potential_on_grid(const SimConfig& cfg) {
    const GridSpec& grid = cfg.grid;
    std::vector<double> v(grid.num_points, 0.0);
    switch (cfg.potential.kind) {
        case PotentialSpec::Kind::none:
            break;
        case PotentialSpec::Kind::delta:
            v[grid.origin_index()] = cfg.potential.q / grid.spacing();
            break;
        case PotentialSpec::Kind::sampled: {
            const WaveField& p = *cfg.potential.profile;
            if (!(p.grid() == grid))
                throw std::invalid_argument("evolve: potential grid mismatch");
            for (int j = 0; j < grid.num_points; ++j) v[j] = p[j].real();
            break;
        }
    }
    return v;
}

// u <- exp(i (|u|^2 - V) tau) u, pointwise; |u| is invariant.
void phase_rotation(std::vector<cplx>& u, const std::vector<double>& v, double tau) {
    const int n = static_cast<int>(u.size());
    for (int j = 0; j < n; ++j) u[j] *= std::polar(1.0, (std::norm(u[j]) - v[j]) * tau);
}

// u <- F^{-1} exp(-i k^2 dt / 2) F u
void kinetic_step(std::vector<cplx>& u, const GridSpec& grid, double dt) {
    fourier::forward(u);
    const int n = grid.num_points;
    for (int m = 0; m < n; ++m) {
        const double k = grid.wavenumber(m);
        u[m] *= std::polar(1.0, -0.5 * k * k * dt);
    }
    fourier::inverse(u);
}

void one_step(std::vector<cplx>& u, const std::vector<double>& v, const GridSpec& grid,
              double dt) {
    phase_rotation(u, v, 0.5 * dt);
    kinetic_step(u, grid, dt);
    phase_rotation(u, v, 0.5 * dt);
}

}  // namespace

WaveField strang_step(const WaveField& u, const SimConfig& cfg) {
    cfg.validate();
    if (!u.all_finite()) throw std::invalid_argument("strang_step: non-finite input");
    std::vector<cplx> buf(u.samples().begin(), u.samples().end());
    one_step(buf, potential_on_grid(cfg), cfg.grid, cfg.dt);
    return WaveField(cfg.grid, std::move(buf));
}

void evolve_with(const SimConfig& cfg, const std::function<void(const Snapshot&)>& on_snapshot) {
    cfg.validate();
    const GridSpec& grid = cfg.grid;
    const std::vector<double> vgrid = potential_on_grid(cfg);

    WaveField u0 = act_on_eta(cfg.initial, grid);
    std::vector<cplx> buf(u0.samples().begin(), u0.samples().end());
    const double mass0 = mass(u0);

    auto emit = [&](double t) {
        Snapshot s;
        s.t = t;
        s.field = WaveField(grid, buf);
        s.mass = mass(s.field);
        s.energy = hamiltonian(s.field, cfg.potential);
        on_snapshot(s);
    };

    const auto total_steps = static_cast<long>(std::llround(cfg.t_final / cfg.dt));
    emit(0.0);
    for (long step = 1; step <= total_steps; ++step) {
        one_step(buf, vgrid, grid, cfg.dt);
        const double t = static_cast<double>(step) * cfg.dt;
        bool snapshot_due = (step % cfg.snapshot_stride == 0) || step == total_steps;
        if (snapshot_due) {
            double m = 0.0;
            for (const auto& s : buf) m += std::norm(s);
            m *= grid.spacing();
            if (!std::isfinite(m))
                throw std::runtime_error("evolve: non-finite field at step " +
                                         std::to_string(step));
            if (m > 100.0 * mass0)
                throw std::runtime_error("evolve: instability abort (L2 growth) at step " +
                                         std::to_string(step));
            emit(t);
        }
    }
}

std::vector<Snapshot> evolve(const SimConfig& cfg) {
    std::vector<Snapshot> out;
    evolve_with(cfg, [&out](const Snapshot& s) { out.push_back(s); });
    return out;
}

ConvergenceResult convergence_study(const SimConfig& cfg, int levels) {
    if (levels < 3) throw std::invalid_argument("convergence_study: levels must be >= 3");
    std::vector<WaveField> finals;
    std::vector<double> dts;
    for (int l = 0; l <= levels; ++l) {  // last level is the reference
        SimConfig c = cfg;
        c.dt = cfg.dt / std::pow(2.0, l);
        c.snapshot_stride = 1 << 30;  // final snapshot only
        auto snaps = evolve(c);
        finals.push_back(snaps.back().field);
        if (l < levels) dts.push_back(c.dt);
    }
    ConvergenceResult res;
    res.dts = dts;
    const WaveField& ref = finals.back();
    for (int l = 0; l < levels; ++l)
        res.errors.push_back(std::sqrt(l2_norm_sq(finals[l] - ref)));
    // least-squares slope of log(err) against log(dt)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = levels;
    for (int l = 0; l < n; ++l) {
        const double x = std::log(dts[l]);
        const double y = std::log(res.errors[l]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    res.observed_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return res;
}

}  // namespace nlslab

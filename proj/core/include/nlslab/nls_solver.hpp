#pragma once

#include <functional>
#include <vector>

#include "nlslab/hamiltonians.hpp"
#include "nlslab/soliton_group.hpp"

namespace nlslab {

struct SimConfig {
    GridSpec grid;
    PotentialSpec potential;
    double dt = 1e-3;
    double t_final = 10.0;
    int snapshot_stride = 100;
    GroupElement initial;  // u(x,0) = g0 . eta

    void validate() const;
};

struct Snapshot {
    double t = 0.0;
    WaveField field;
    double mass = 0.0;
    double energy = 0.0;
};

/// Grid realization of q delta_0: a single spike of height q/dx at the
/// x = 0 node, so its integral is exactly q.
WaveField discrete_delta(const GridSpec& grid, double q);

/// One Strang step: potential+nonlinear half rotation, full kinetic
/// Fourier step, second half rotation from the updated |u|^2.
WaveField strang_step(const WaveField& u, const SimConfig& cfg);

/// Full evolution with snapshots every snapshot_stride steps (and at the
/// final time). Aborts on NaN or on L2 growth beyond 10x the initial norm.
std::vector<Snapshot> evolve(const SimConfig& cfg);

/// Same, but invoking a callback per snapshot instead of storing fields
/// (memory-light path for long runs).
void evolve_with(const SimConfig& cfg, const std::function<void(const Snapshot&)>& on_snapshot);

struct ConvergenceResult {
    std::vector<double> dts;
    std::vector<double> errors;   // L2 distance to the finest run at t_final
    double observed_order = 0.0;  // least-squares slope of log error vs log dt
};

/// Temporal self-refinement study: run at dt, dt/2, ..., compare against
/// the finest level.
ConvergenceResult convergence_study(const SimConfig& cfg, int levels);

}  // namespace nlslab

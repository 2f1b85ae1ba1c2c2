#include <benchmark/benchmark.h>

#include "nlslab/effective_dynamics.hpp"
#include "nlslab/modulation.hpp"
#include "nlslab/nls_solver.hpp"
#include "nlslab/spectral_lab.hpp"

using namespace nlslab;

namespace {

SimConfig fig1_config(int n) {
    SimConfig cfg;
    cfg.grid = GridSpec::make(30.0, n);
    cfg.potential = PotentialSpec::delta(-0.01);
    cfg.dt = 1e-3;
    cfg.initial = {-3.0, 0.0, 0.0, 1.0};
    return cfg;
}

void bm_strang_step(benchmark::State& state) {
    SimConfig cfg = fig1_config(static_cast<int>(state.range(0)));
    WaveField u = act_on_eta(cfg.initial, cfg.grid);
    for (auto _ : state) {
        u = strang_step(u, cfg);
        benchmark::DoNotOptimize(u.samples().data());
    }
}
BENCHMARK(bm_strang_step)->Arg(1024)->Arg(4096);

void bm_decompose(benchmark::State& state) {
    const GridSpec grid = GridSpec::make(30.0, static_cast<int>(state.range(0)));
    const GroupElement g{-2.3, 0.12, 0.7, 1.05};
    const WaveField u = act_on_eta(g, grid);
    for (auto _ : state) {
        Decomposition d = decompose(u, g);
        benchmark::DoNotOptimize(d.g.a);
    }
}
BENCHMARK(bm_decompose)->Arg(1024)->Arg(4096);

void bm_act_offgrid(benchmark::State& state) {
    const GridSpec grid = GridSpec::make(30.0, static_cast<int>(state.range(0)));
    const WaveField u = act_on_eta({-1.0, 0.3, 0.0, 1.0}, grid);
    const GroupElement g{0.4, -0.2, 1.1, 0.97};
    for (auto _ : state) {
        WaveField v = act(g, u);
        benchmark::DoNotOptimize(v.samples().data());
    }
}
BENCHMARK(bm_act_offgrid)->Arg(1024)->Arg(4096);

void bm_spectral_assemble_solve(benchmark::State& state) {
    const GridSpec grid = GridSpec::make(20.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        OperatorMatrix op = assemble(BlockSign::plus, grid);
        auto pairs = smallest_eigenpairs(op, 2);
        benchmark::DoNotOptimize(pairs[0].value);
    }
}
BENCHMARK(bm_spectral_assemble_solve)->Arg(256)->Arg(512);

void bm_period_oracle(benchmark::State& state) {
    for (auto _ : state) {
        double p = oscillation_period(-3.0, -0.01);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(bm_period_oracle);

}  // namespace

BENCHMARK_MAIN();

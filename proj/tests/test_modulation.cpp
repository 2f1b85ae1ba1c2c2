#include "doctest.h"

#include <cmath>
#include <random>

#include "nlslab/effective_dynamics.hpp"
#include "nlslab/modulation.hpp"
#include "nlslab/nls_solver.hpp"
#include "test_util.hpp"

using namespace nlslab;

namespace {
const GridSpec G = GridSpec::make(20.0, 1024);
const GridSpec GW = GridSpec::make(30.0, 4096);  // wide, for decomposition accuracy
}  // namespace

TEST_CASE("decompose recovers a pure soliton") {
    const GroupElement g{-2.4, 0.35, 1.2, 1.08};
    const WaveField u = act_on_eta(g, GW);
    const Decomposition d = decompose(u, {-2.0, 0.2, 1.0, 1.0});
    REQUIRE(d.converged);
    CHECK(std::abs(d.g.a - g.a) < 1e-8);
    CHECK(std::abs(d.g.v - g.v) < 1e-8);
    CHECK(std::abs(testutil::angle_diff(d.g.gamma, g.gamma)) < 1e-8);
    CHECK(std::abs(d.g.mu - g.mu) < 1e-8);
    CHECK(std::sqrt(h1_norm_sq(d.w)) < 1e-8);
    CHECK(d.orthogonality_defect < 1e-8);
    // reconstruction
    const WaveField eta_f = sample_real([](double x) { return eta(x); }, GW);
    CHECK(std::sqrt(l2_norm_sq(act(d.g, eta_f + d.w) - u)) < 1e-8);
}

TEST_CASE("decompose with a constructed residual") {
    std::mt19937 rng(61);
    const GroupElement g{1.1, -0.25, 0.4, 0.95};
    WaveField phi = symplectic_orthogonalize(testutil::random_smooth_field(GW, rng));
    const double n = std::sqrt(h1_norm_sq(phi));
    phi = cplx{1.0 / n, 0.0} * phi;
    const double eps = 1e-3;
    const WaveField eta_f = sample_real([](double x) { return eta(x); }, GW);
    const WaveField u = act(g, eta_f + (cplx{eps, 0.0} * phi));
    const Decomposition d = decompose(u, g);
    REQUIRE(d.converged);
    CHECK(std::abs(d.g.a - g.a) < 1e-6);
    CHECK(std::abs(d.g.v - g.v) < 1e-6);
    CHECK(std::abs(d.g.mu - g.mu) < 1e-6);
    CHECK(std::sqrt(l2_norm_sq(d.w - (cplx{eps, 0.0} * phi))) < 1e-6);
}

TEST_CASE("moment guess is exact on pure solitons") {
    const GroupElement g{-1.7, 0.45, 0.9, 1.0};
    const WaveField u = act_on_eta(g, GW);
    const GroupElement m = moment_guess(u);
    CHECK(std::abs(m.a - g.a) < 1e-6);
    CHECK(std::abs(m.v - g.v) < 1e-6);
    CHECK(std::abs(m.mu - g.mu) < 1e-6);
    const Decomposition d = decompose(u);  // default guess path
    REQUIRE(d.converged);
    CHECK(std::abs(d.g.a - g.a) < 1e-8);
    CHECK_THROWS(moment_guess(WaveField(GW)));
}

TEST_CASE("fig-1 initial data decomposes to its parameters") {
    const WaveField u = act_on_eta({-3.0, 0.0, 0.0, 1.0}, GW);
    const Decomposition d = decompose(u);
    REQUIRE(d.converged);
    CHECK(std::abs(d.g.a + 3.0) < 1e-8);
    CHECK(std::abs(d.g.v) < 1e-8);
    CHECK(std::abs(testutil::angle_diff(d.g.gamma, 0.0)) < 1e-8);
    CHECK(std::abs(d.g.mu - 1.0) < 1e-8);
    CHECK(std::sqrt(h1_norm_sq(d.w)) < 1e-8);
}

TEST_CASE("mu from residual") {
    CHECK(mu_from_residual(WaveField(G)) == 1.0);
    // scale eta so ||w||^2 = 0.02
    const WaveField eta_f = sample_real([](double x) { return eta(x); }, G);
    const double c = std::sqrt(0.02 / l2_norm_sq(eta_f));
    CHECK(mu_from_residual(cplx{c, 0.0} * eta_f) ==
          doctest::Approx(2.0 / 2.02).epsilon(1e-10));
}

TEST_CASE("linearization kernel and eigen identities") {
    // wide grid: boundary tails of eta' seed Gibbs noise under d^2/dx^2
    const WaveField eta_f = sample_real([](double x) { return eta(x); }, GW);
    const WaveField i_eta = cplx{0.0, 1.0} * eta_f;
    CHECK(std::sqrt(l2_norm_sq(apply_linearization(i_eta))) < 1e-8);  // L- eta = 0

    const WaveField deta = spectral_derivative(eta_f, 1);
    CHECK(std::sqrt(l2_norm_sq(apply_linearization(deta))) < 1e-8);  // L+ d eta = 0

    const WaveField eta2 = sample_real([](double x) { return eta(x) * eta(x); }, GW);
    const WaveField res = apply_linearization(eta2) + (cplx{1.5, 0.0} * eta2);
    CHECK(std::sqrt(l2_norm_sq(res)) < 1e-6);  // L+ eta^2 = -(3/2) eta^2
}

TEST_CASE("nonlinearity") {
    CHECK(l2_norm_sq(apply_nonlinearity(WaveField(G))) == 0.0);

    std::mt19937 rng(67);
    WaveField w = testutil::random_smooth_field(G, rng);
    for (int j = 0; j < w.size(); ++j) w[j] = w[j].real();
    const WaveField nw = apply_nonlinearity(w);
    for (int j = 0; j < w.size(); j += 97) {
        const double e = eta(G.node(j));
        const double x = w[j].real();
        CHECK(nw[j].real() == doctest::Approx(3.0 * e * x * x + x * x * x).epsilon(1e-12));
    }

    // quadratic smallness
    const WaveField wc = testutil::random_smooth_field(G, rng);
    const double base = std::sqrt(l2_norm_sq(apply_nonlinearity(wc)));
    for (double epsv : {0.1, 0.01}) {
        const double scaled =
            std::sqrt(l2_norm_sq(apply_nonlinearity(cplx{epsv, 0.0} * wc)));
        CHECK(scaled / (epsv * epsv) < base + 1.0);
    }
}

TEST_CASE("h1 error to soliton") {
    const GroupElement g{0.8, -0.1, 0.2, 1.05};
    const WaveField u = act_on_eta(g, GW);
    CHECK(h1_error_to_soliton(u, g) < 1e-12);
    std::mt19937 rng(71);
    const WaveField w = testutil::random_smooth_field(GW, rng, 0.01);
    const WaveField eta_f = sample_real([](double x) { return eta(x); }, GW);
    const double err = h1_error_to_soliton(act(g, eta_f + w), g);
    CHECK(err > 0.0);
    CHECK(err < 10.0 * std::sqrt(h1_norm_sq(w)));
}

TEST_CASE("P annihilates i L w on the orthogonal subspace") {
    std::mt19937 rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        WaveField w = symplectic_orthogonalize(testutil::random_smooth_field(G, rng));
        const double n = std::sqrt(h1_norm_sq(w));
        w = cplx{1.0 / n, 0.0} * w;
        const WaveField ilw = cplx{0.0, 1.0} * apply_linearization(w);
        CHECK(p_functionals(ilw).max_abs() < 1e-7);
    }
}

TEST_CASE("delta-weighted projection bound") {
    // || P(i delta_{x0} w) || <= C ||w||_H1^{1/2} ||w||_L2^{1/2}
    std::mt19937 rng(79);
    std::uniform_real_distribution<double> x0d(-6.0, 6.0);
    for (int trial = 0; trial < 20; ++trial) {
        const WaveField w = testutil::random_smooth_field(G, rng);
        const double x0 = x0d(rng);
        const int j0 = static_cast<int>(std::lround((x0 + G.half_length) / G.spacing()));
        WaveField dw(G);
        dw[j0] = cplx{0.0, 1.0} * w[j0] / G.spacing();
        const LieCoeffs p = p_functionals(dw);
        const double bound =
            2.0 * std::pow(h1_norm_sq(w), 0.25) * std::pow(l2_norm_sq(w), 0.25);
        const double norm = std::sqrt(p.c1 * p.c1 + p.c2 * p.c2 + p.c3 * p.c3 + p.c4 * p.c4);
        CHECK(norm <= bound);
    }
}

TEST_CASE("modulation residual: synthetic effective trajectory") {
    const double q = -0.01;
    auto rhs = [q](const EffectiveState& s) { return rhs_delta(s, q); };
    auto residual_max = [&](double dt) {
        const auto traj = integrate_effective({-3.0, 0.0, 0.0, 1.0, 0.0}, rhs, 50.0, dt);
        std::vector<Decomposition> decs(traj.states.size());
        for (std::size_t i = 0; i < traj.states.size(); ++i)
            decs[i].g = traj.states[i].group();
        const auto coeffs = modulation_residual(decs, dt, q);
        double mx = 0.0;
        for (const auto& c : coeffs) mx = std::max(mx, c.max_abs());
        return mx;
    };
    const double r1 = residual_max(0.5);
    const double r2 = residual_max(0.25);
    CHECK(r1 < 1e-4);       // already just finite-difference error
    CHECK(r2 < r1 / 3.0);   // second-order decay
    CHECK_THROWS(modulation_residual(std::vector<Decomposition>(2), 0.5, q));
}

TEST_CASE("modulation residual vanishes on a free-soliton PDE run") {
    SimConfig cfg;
    cfg.grid = GridSpec::make(20.0, 2048);
    cfg.dt = 1e-3;
    cfg.t_final = 2.0;
    cfg.snapshot_stride = 100;
    cfg.initial = {0.0, 0.3, 0.0, 1.0};
    std::vector<Decomposition> decs;
    GroupElement warm = cfg.initial;
    evolve_with(cfg, [&](const Snapshot& s) {
        Decomposition d = decompose(s.field, warm);
        REQUIRE(d.converged);
        warm = d.g;
        decs.push_back(std::move(d));
    });
    const auto coeffs = modulation_residual(decs, 0.1, 0.0);
    for (const auto& c : coeffs) CHECK(c.max_abs() < 1e-5);
}

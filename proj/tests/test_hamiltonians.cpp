#include "doctest.h"

#include <cmath>
#include <random>

#include "nlslab/hamiltonians.hpp"
#include "test_util.hpp"

using namespace nlslab;

namespace {
const GridSpec G = GridSpec::make(20.0, 1024);
const WaveField ETA = sample_real([](double x) { return eta(x); }, G);
}  // namespace

TEST_CASE("mass") {
    CHECK(mass(WaveField(G)) == 0.0);
    CHECK(mass(ETA) == doctest::Approx(2.0).epsilon(1e-12));
    const GroupElement g{-1.0, 0.4, 0.3, 1.3};
    CHECK(mass(act_on_eta(g, G)) == doctest::Approx(2.0 * g.mu).epsilon(1e-10));
}

TEST_CASE("hamiltonian closed values") {
    CHECK(hamiltonian(WaveField(G), PotentialSpec::free()) == 0.0);
    CHECK(hamiltonian(ETA, PotentialSpec::free()) == doctest::Approx(-1.0 / 6.0).epsilon(1e-9));

    // free soliton with mu = 1: H_q = -1/6 + v0^2/2 + (q/2) sech^2(a0)
    const GroupElement g0{-2.0, 0.7, 0.4, 1.0};
    const double q = -0.3;
    const WaveField u = free_soliton(g0, 0.0, G);
    const double expect = -1.0 / 6.0 + 0.5 * g0.v * g0.v + 0.5 * q * eta(g0.a) * eta(g0.a);
    CHECK(hamiltonian(u, PotentialSpec::delta(q)) == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("energy functional and stationarity at eta") {
    CHECK(energy_functional(ETA) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(energy_functional(WaveField(G)) == 0.0);

    std::mt19937 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        WaveField phi = testutil::random_smooth_field(G, rng);
        // real perturbation, H1-normalized
        for (int j = 0; j < phi.size(); ++j) phi[j] = phi[j].real();
        const double n = std::sqrt(h1_norm_sq(phi));
        phi = cplx{1.0 / n, 0.0} * phi;
        auto fd = [&](double eps) {
            const WaveField up = ETA + (cplx{eps, 0.0} * phi);
            const WaveField dn = ETA - (cplx{eps, 0.0} * phi);
            return (energy_functional(up) - energy_functional(dn)) / (2.0 * eps);
        };
        const double d1 = fd(1e-3);
        const double d2 = fd(5e-4);
        CHECK(std::abs(d1) < 1e-5);
        CHECK(std::abs(d2) < std::abs(d1) / 2.5 + 1e-13);  // O(eps^2) decay
    }
}

TEST_CASE("lyapunov") {
    CHECK(lyapunov(WaveField(G)) == 0.0);

    // direct quadrature oracle for a non-orthogonal perturbation
    const WaveField w = cplx{0.05, 0.0} * ETA;
    const WaveField upw = ETA + w;
    auto energy_by_hand = [&](const WaveField& u) {
        const WaveField du = spectral_derivative(u, 1);
        double quart = 0.0;
        for (int j = 0; j < u.size(); ++j) quart += std::norm(u[j]) * std::norm(u[j]);
        quart *= G.spacing();
        return 0.25 * (l2_norm_sq(du) - quart) + 0.25 * l2_norm_sq(u);
    };
    CHECK(lyapunov(w) ==
          doctest::Approx(energy_by_hand(upw) - energy_by_hand(ETA)).epsilon(1e-12));

    // coercivity for small symplectically orthogonal residuals
    std::mt19937 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        WaveField w0 = symplectic_orthogonalize(testutil::random_smooth_field(G, rng));
        const double n = std::sqrt(h1_norm_sq(w0));
        const WaveField ws = cplx{1e-3 / n, 0.0} * w0;
        CHECK(lyapunov(ws) >= 0.05 * h1_norm_sq(ws));
    }
}

TEST_CASE("restricted hamiltonian, delta case") {
    CHECK(restricted_hamiltonian_delta(GroupElement::identity(), 0.0) ==
          doctest::Approx(-1.0 / 6.0));
    const double q = -0.25;
    CHECK(restricted_hamiltonian_delta({1.7, 0.0, 0.0, 1.0}, q) ==
          doctest::Approx(-1.0 / 6.0 + 0.5 * q * eta(1.7) * eta(1.7)));

    // wide grid keeps the periodic tails below the 1e-8 budget at mu = 0.5, |a| = 5
    const GridSpec wide = GridSpec::make(30.0, 2048);
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> ad(-5.0, 5.0), vd(-2.0, 2.0), mud(0.5, 2.0);
    for (int i = 0; i < 100; ++i) {
        const GroupElement g{ad(rng), vd(rng), 0.0, mud(rng)};
        const double closed = restricted_hamiltonian_delta(g, q);
        const double quad = hamiltonian(act_on_eta(g, wide), PotentialSpec::delta(q));
        CHECK(std::abs(closed - quad) < 1e-8);
    }
}

TEST_CASE("restricted hamiltonian, sampled potential") {
    const GroupElement g{1.2, 0.8, 0.0, 1.3};
    const PotentialSpec zero =
        PotentialSpec::sampled(sample_real([](double) { return 0.0; }, G), "zero", 1.0);
    CHECK(restricted_hamiltonian_general(g, zero) ==
          doctest::Approx(0.5 * g.mu * g.v * g.v - std::pow(g.mu, 3) / 6.0).epsilon(1e-12));

    const GridSpec wide = GridSpec::make(30.0, 2048);
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> ad(-4.0, 4.0), vd(-2.0, 2.0), mud(0.5, 2.0);
    for (double h : {0.25, 0.2}) {
        const PotentialSpec V = PotentialSpec::sampled(
            sample_real([h](double x) { return -eta(h * x) * eta(h * x); }, wide), "sech2slow", h);
        for (int i = 0; i < 30; ++i) {
            const GroupElement g2{ad(rng), vd(rng), 0.0, mud(rng)};
            const double closed = restricted_hamiltonian_general(g2, V);
            const double quad = hamiltonian(act_on_eta(g2, wide), V);
            CHECK(std::abs(closed - quad) < 1e-8);
        }
    }
}

TEST_CASE("narrow bump approaches the delta restriction") {
    const GridSpec fine = GridSpec::make(20.0, 2048);
    const double q = -0.1;
    const GroupElement g{-0.8, 0.0, 0.0, 1.0};
    auto bump_value = [&](double sigma) {
        const PotentialSpec V = PotentialSpec::sampled(
            sample_real(
                [&](double x) {
                    return q * std::exp(-x * x / (2.0 * sigma * sigma)) /
                           (sigma * std::sqrt(2.0 * 3.14159265358979323846));
                },
                fine),
            "bump", 0.0);
        return restricted_hamiltonian_general(g, V);
    };
    const double target = restricted_hamiltonian_delta(g, q);
    const double e1 = std::abs(bump_value(0.4) - target);
    const double e2 = std::abs(bump_value(0.2) - target);
    CHECK(e2 < e1);
    CHECK(e2 < 1e-3);
}

TEST_CASE("classical energy") {
    CHECK(classical_energy(1.1, 0.0, -0.3) == doctest::Approx(-0.15 * eta(1.1) * eta(1.1)));
    CHECK(classical_energy(0.4, 0.7, 0.0) == doctest::Approx(0.245));
}

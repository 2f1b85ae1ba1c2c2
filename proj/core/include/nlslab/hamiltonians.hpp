#pragma once

#include <optional>
#include <string>

#include "nlslab/grid.hpp"
#include "nlslab/soliton_group.hpp"

namespace nlslab {

/// External potential: none, a delta of strength q at the origin, or a
/// real-valued sampled potential (e.g. W(h x) for slowly varying runs).
struct PotentialSpec {
    enum class Kind { none, delta, sampled };

    Kind kind = Kind::none;
    double q = 0.0;                      // delta strength
    std::optional<WaveField> profile;    // sampled values, real
    std::string label;
    double h = 0.0;                      // recorded scale for sampled runs

    static PotentialSpec free();
    static PotentialSpec delta(double q);
    static PotentialSpec sampled(WaveField profile, std::string label, double h);
};

/// M(u) = integral |u|^2.
double mass(const WaveField& u);

/// H_V(u) = (1/4) integral (|du|^2 - |u|^4) + potential term; the delta
/// term reads |u(0)|^2 at the x = 0 node.
double hamiltonian(const WaveField& u, const PotentialSpec& V);

/// E(u) = H_0(u) + (1/4)||u||_L2^2; stationary at the sech profile.
double energy_functional(const WaveField& u);

/// L(w) = E(eta + w) - E(eta) on w's grid.
double lyapunov(const WaveField& w);

/// Closed form of H_{q delta} restricted to the soliton manifold:
/// mu v^2/2 - mu^3/6 + (q/2) mu^2 sech^2(mu a).
double restricted_hamiltonian_delta(const GroupElement& g, double q);

/// H_V restricted to the soliton manifold for a sampled potential,
/// computed by grid quadrature of the exact restriction integral.
double restricted_hamiltonian_general(const GroupElement& g, const PotentialSpec& V);

/// v^2/2 + (q/2) sech^2(a) -- conserved along the effective flow.
double classical_energy(double a, double v, double q);

}  // namespace nlslab

#include "nlslab/hamiltonians.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {

PotentialSpec PotentialSpec::free() { return PotentialSpec{}; }

PotentialSpec PotentialSpec::delta(double q) {
    PotentialSpec p;
    p.kind = Kind::delta;
    p.q = q;
    p.label = "delta";
    return p;
}

PotentialSpec PotentialSpec::sampled(WaveField profile, std::string label, double h) {
    for (const auto& s : profile.samples())
        if (s.imag() != 0.0)
            throw std::invalid_argument("PotentialSpec: sampled potential must be real");
    PotentialSpec p;
    p.kind = Kind::sampled;
    p.profile = std::move(profile);
    p.label = std::move(label);
    p.h = h;
    return p;
}

double mass(const WaveField& u) { return l2_norm_sq(u); }

double hamiltonian(const WaveField& u, const PotentialSpec& V) {
    const WaveField du = spectral_derivative(u, 1);
    double quartic = 0.0;
    for (const auto& s : u.samples()) {
        const double m = std::norm(s);
        quartic += m * m;
    }
    quartic *= u.grid().spacing();
    double out = 0.25 * (l2_norm_sq(du) - quartic);
    switch (V.kind) {
        case PotentialSpec::Kind::none:
            break;
        case PotentialSpec::Kind::delta:
            out += 0.5 * V.q * std::norm(u.at_origin());
            break;
        case PotentialSpec::Kind::sampled: {
            const WaveField& p = *V.profile;
            if (!(p.grid() == u.grid()))
                throw std::invalid_argument("hamiltonian: potential grid mismatch");
            double acc = 0.0;
            for (int j = 0; j < u.size(); ++j) acc += p[j].real() * std::norm(u[j]);
            out += 0.5 * acc * u.grid().spacing();
            break;
        }
    }
    return out;
}

double energy_functional(const WaveField& u) {
    return hamiltonian(u, PotentialSpec::free()) + 0.25 * mass(u);
}

double lyapunov(const WaveField& w) {
    const WaveField eta_field = sample_real([](double x) { return eta(x); }, w.grid());
    return energy_functional(eta_field + w) - energy_functional(eta_field);
}

double restricted_hamiltonian_delta(const GroupElement& g, double q) {
    const double se = eta(g.mu * g.a);
    return 0.5 * g.mu * g.v * g.v - g.mu * g.mu * g.mu / 6.0 +
           0.5 * q * g.mu * g.mu * se * se;
}

double restricted_hamiltonian_general(const GroupElement& g, const PotentialSpec& V) {
    if (V.kind == PotentialSpec::Kind::none)
        return 0.5 * g.mu * g.v * g.v - g.mu * g.mu * g.mu / 6.0;
    if (V.kind != PotentialSpec::Kind::sampled)
        throw std::invalid_argument("restricted_hamiltonian_general: needs a sampled potential");
    const WaveField& p = *V.profile;
    const GridSpec& grid = p.grid();
    // (1/2) integral V(x) mu^2 sech^2(mu (x - a)) dx by the periodic rectangle rule
    double acc = 0.0;
    for (int j = 0; j < grid.num_points; ++j) {
        const double se = eta(g.mu * (grid.node(j) - g.a));
        acc += p[j].real() * se * se;
    }
    return 0.5 * g.mu * g.v * g.v - g.mu * g.mu * g.mu / 6.0 +
           0.5 * g.mu * g.mu * acc * grid.spacing();
}

double classical_energy(double a, double v, double q) {
    const double se = eta(a);
    return 0.5 * v * v + 0.5 * q * se * se;
}

}  // namespace nlslab

#pragma once

#include "nlslab/grid.hpp"

namespace nlslab {

/// Soliton modulation parameters (center, velocity, phase, scale).
/// The set forms a group under the semidirect-product law below; the
/// phase is stored unwrapped (compare mod 2*pi when needed).
struct GroupElement {
    double a = 0.0;
    double v = 0.0;
    double gamma = 0.0;
    double mu = 1.0;

    static GroupElement identity() { return {}; }
};

/// Coefficients on the Lie-algebra generators
/// e1 = -d/dx, e2 = ix, e3 = i, e4 = d/dx (x .).
struct LieCoeffs {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;

    double max_abs() const;
};

/// sech profile.
double eta(double x);

/// Group law: (a,v,g,mu)(a',v',g',mu') = (a + a'/mu, v + v'mu,
/// g + g' + v a'/mu, mu mu').
GroupElement group_mul(const GroupElement& g, const GroupElement& g2);
GroupElement group_inv(const GroupElement& g);

/// (g.u)(x) = e^{i gamma} e^{i v (x-a)} mu u(mu(x-a)); off-node values of
/// u come from trigonometric interpolation. Throws for mu outside the
/// resolvable range of the grid.
WaveField act(const GroupElement& g, const WaveField& u);

/// g applied to the sech profile, sampled from the closed form (no
/// interpolation error).
WaveField act_on_eta(const GroupElement& g, const GridSpec& grid);

/// Exact q = 0 soliton at time t with initial parameters g0.
WaveField free_soliton(const GroupElement& g0, double t, const GridSpec& grid);

/// Symplectic pairing Im integral of u * conj(w).
double omega(const WaveField& u, const WaveField& w);

/// Apply generator j in {1..4} to a field.
WaveField lie_apply(int j, const WaveField& u);

/// Generator j applied to the sech profile, sampled from closed forms.
WaveField lie_eta(int j, const GridSpec& grid);

/// Projection functionals P_j onto the generator directions; the unique
/// coefficients making u - P(u).eta symplectically orthogonal to the
/// tangent space at eta.
LieCoeffs p_functionals(const WaveField& u);

/// Sum c_j e_j.eta as a field.
WaveField lie_combination(const LieCoeffs& c, const GridSpec& grid);

/// u minus its P-projection: symplectically orthogonal to the tangent
/// space at eta.
WaveField symplectic_orthogonalize(const WaveField& u);

}  // namespace nlslab

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlslab/hamiltonians.hpp"
#include "nlslab/soliton_group.hpp"

namespace nlslab {

/// Modulation parameters evolving under the restricted Hamiltonian flow.
struct EffectiveState {
    double a = 0.0;
    double v = 0.0;
    double gamma = 0.0;
    double mu = 1.0;
    double t = 0.0;

    GroupElement group() const { return {a, v, gamma, mu}; }
};

struct EffectiveDeriv {
    double da = 0.0, dv = 0.0, dgamma = 0.0, dmu = 0.0;
};

using EffectiveRhs = std::function<EffectiveDeriv(const EffectiveState&)>;

struct EffectiveTrajectory {
    std::vector<EffectiveState> states;  // uniform output times, strictly increasing
    double dt = 0.0;
    std::string label;

    const EffectiveState& back() const { return states.back(); }
    /// Linear interpolation in t (output spacing is dt).
    EffectiveState at_time(double t) const;
};

/// Flow of the restricted delta-potential Hamiltonian (mu is constant):
///   da/dt     = v
///   dv/dt     = q mu^2 sech^2(mu a) tanh(mu a)
///   dgamma/dt = v^2/2 + mu^2/2 - q mu sech^2(mu a)
///               + q mu^2 a sech^2(mu a) tanh(mu a)
///   dmu/dt    = 0
/// The phase equation is v f_v/mu - f_mu for the closed-form restricted
/// Hamiltonian, which also makes the restricted Hamiltonian a conserved
/// quantity of the flow.
EffectiveDeriv rhs_delta(const EffectiveState& s, double q);

/// Same flow for a sampled potential; partial derivatives of the
/// restriction integral are taken analytically under the quadrature sum.
EffectiveDeriv rhs_general(const EffectiveState& s, const PotentialSpec& V);

/// Newton-type comparison dynamics for slowly varying potentials:
/// da/dt = v, dv/dt = -h W'(h a), dgamma/dt = 1/2 + v^2/2 - W(h a).
EffectiveDeriv rhs_bare_newton(const EffectiveState& s,
                               const std::function<double(double)>& w_of_x,
                               const std::function<double(double)>& dw_of_x, double h);

/// Classical RK4 with fixed step; output at every multiple of dt up to
/// the first time >= t_final. Aborts on non-finite state.
EffectiveTrajectory integrate_effective(const EffectiveState& s0, const EffectiveRhs& rhs,
                                        double t_final, double dt);

/// |a_turn| = sech^{-1}(v / sqrt(q)) for a repulsive delta; nullopt when
/// v >= sqrt(q) (the soliton passes over). Throws for v <= 0 or q <= 0.
std::optional<double> turning_point(double v_incoming, double q);

/// Cycle time of the trapped oscillation (q < 0, v0 = 0, start at a0):
/// integral over [a0, -a0] of 2 dx / (sqrt|q| sqrt(sech^2 x - sech^2 a0)),
/// by tanh-sinh quadrature (inverse-square-root endpoint singularities).
double oscillation_period(double a0, double q);

/// Generic tanh-sinh quadrature of f on [lo, hi]; integrable endpoint
/// singularities allowed.
double tanh_sinh(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-12);

}  // namespace nlslab

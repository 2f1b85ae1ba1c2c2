#pragma once

#include <vector>

#include "nlslab/soliton_group.hpp"

namespace nlslab {

/// Result of the symplectic-orthogonal decomposition u = g.(eta + w).
struct Decomposition {
    GroupElement g;
    WaveField w;
    double orthogonality_defect = 0.0;  // max_j |omega(w, e_j eta)|
    int newton_iters = 0;
    bool converged = false;
};

/// Moment-based initial guess (exact for pure solitons): centroid,
/// momentum per mass, half the mass, phase at the centroid.
GroupElement moment_guess(const WaveField& u);

/// Newton solve of omega(g^{-1} u - eta, e_j eta) = 0 for the four
/// parameters. The residual is evaluated via the conformal pullback
/// omega(u - g.eta, g.e_j eta)/mu so only closed-form fields are sampled
/// per iteration. Non-convergence within 50 iterations is reported, not
/// thrown (the input left the decomposition regime).
Decomposition decompose(const WaveField& u, const GroupElement& guess);
Decomposition decompose(const WaveField& u);

/// Scale recovered from the residual norm for mass-2 data:
/// ||w||_L2^2 = 2(1 - mu)/mu  =>  mu = 2/(2 + ||w||^2).
double mu_from_residual(const WaveField& w);

/// Linearization at the soliton: Lw = -w''/2 - 2 eta^2 w - eta^2 conj(w) + w/2.
WaveField apply_linearization(const WaveField& w);

/// Nonlinear remainder: Nw = 2|w|^2 eta + eta w^2 + |w|^2 w.
WaveField apply_nonlinearity(const WaveField& w);

/// H1 distance of u to the modulated soliton g.eta.
double h1_error_to_soliton(const WaveField& u, const GroupElement& g);

/// Modulation-equation residual coefficients per frame, from 2nd-order
/// finite differences of the parameter track (centered inside, one-sided
/// at the ends). Needs at least 3 frames.
std::vector<LieCoeffs> modulation_residual(const std::vector<Decomposition>& traj,
                                           double dt_between, double q);

}  // namespace nlslab

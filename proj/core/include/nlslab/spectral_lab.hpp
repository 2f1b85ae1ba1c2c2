#pragma once

#include <Eigen/Dense>

#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab {

enum class BlockSign { plus, minus };  // L+- = -d^2/dx^2/2 - (2 +- 1) sech^2 + 1/2

struct OperatorMatrix {
    BlockSign sign;
    GridSpec grid;
    Eigen::MatrixXd matrix;  // real symmetric, spectral kinetic block

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const { return matrix * v; }
};

struct EigenPair {
    double value;
    WaveField vector;  // real-valued, L2-normalized
};

struct CoercivityReport {
    double constrained_min = 0.0;
    std::vector<double> constraint_defects;  // |<v_min, c_i>|, L2 pairing
    double rho0_reference = 0.0;             // 9 / (2 (12 + pi^2))
};

/// One reduction step: L has a single nonpositive eigenvalue
/// -c0 below a c1-coercive complement, and c2 is the squared overlap of
/// the ground state with the constraint direction; c3 = c1 c2 - c0(1 - c2).
struct ReductionCase {
    double c0, c1, c2;
    double c3() const { return c1 * c2 - c0 * (1.0 - c2); }
};

struct ConstantTable {
    ReductionCase cases[3];
    double rho0;  // min of the three c3 values
};

/// Dense assembly of L+-: Fourier-spectral kinetic block plus diagonal
/// Poschl-Teller potential.
OperatorMatrix assemble(BlockSign sign, const GridSpec& grid);

/// The k lowest eigenpairs (k <= 6), dense symmetric solve.
std::vector<EigenPair> smallest_eigenpairs(const OperatorMatrix& op, int k);

/// Minimum Rayleigh quotient over the L2-orthogonal complement of the
/// constraint fields: project onto the complement (QR), eigensolve the
/// projected block. Rank-deficient constraint sets are rejected.
CoercivityReport constrained_coercivity(const OperatorMatrix& op,
                                        const std::vector<WaveField>& constraints);

/// Closed-form constants of the three reduction cases and their minimum
/// rho0 = 9 / (2 (12 + pi^2)).
ConstantTable lina_constants();

double rho0();

/// 2 rho0 / (7 + 2 rho0), approximately 0.0555.
double h1_coercivity_constant();

/// Intermediate derivative-only constant 2 rho0 / (5 + 2 rho0) ~ 0.0760.
double dx_coercivity_constant();

}  // namespace nlslab

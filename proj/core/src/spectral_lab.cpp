#include "nlslab/spectral_lab.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlslab/soliton_group.hpp"

namespace nlslab {

OperatorMatrix assemble(BlockSign sign, const GridSpec& grid) {
    const int n = grid.num_points;
    // first row of the circulant -d^2/dx^2/2 block: inverse FFT of k^2/2
    std::vector<cplx> modes(n);
    for (int m = 0; m < n; ++m) {
        const double k = grid.wavenumber(m);
        modes[m] = cplx{0.5 * k * k, 0.0};
    }
    fourier::inverse(modes);

    const double well = (sign == BlockSign::plus) ? 3.0 : 1.0;
    Eigen::MatrixXd h(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) h(j, l) = modes[((j - l) % n + n) % n].real();
    for (int j = 0; j < n; ++j) {
        const double e = eta(grid.node(j));
        h(j, j) += -well * e * e + 0.5;
    }
    // enforce exact symmetry against FFT roundoff
    h = 0.5 * (h + h.transpose()).eval();
    return OperatorMatrix{sign, grid, std::move(h)};
}

std::vector<EigenPair> smallest_eigenpairs(const OperatorMatrix& op, int k) {
    if (k < 1 || k > 6) throw std::invalid_argument("smallest_eigenpairs: k must be in 1..6");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("smallest_eigenpairs: eigensolver failed");
    const double dx = op.grid.spacing();
    std::vector<EigenPair> out;
    for (int i = 0; i < k; ++i) {
        std::vector<cplx> samples(op.grid.num_points);
        for (int j = 0; j < op.grid.num_points; ++j)
            samples[j] = cplx{solver.eigenvectors()(j, i) / std::sqrt(dx), 0.0};
        out.push_back({solver.eigenvalues()(i), WaveField(op.grid, std::move(samples))});
    }
    return out;
}

CoercivityReport constrained_coercivity(const OperatorMatrix& op,
                                        const std::vector<WaveField>& constraints) {
    const int n = op.grid.num_points;
    const int m = static_cast<int>(constraints.size());
    if (m >= n) throw std::invalid_argument("constrained_coercivity: bad constraint count");
    if (m == 0) {  // unconstrained: plain smallest eigenvalue
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("constrained_coercivity: eigensolver failed");
        CoercivityReport rep;
        rep.constrained_min = solver.eigenvalues()(0);
        rep.rho0_reference = rho0();
        return rep;
    }

    Eigen::MatrixXd c(n, m);
    for (int i = 0; i < m; ++i) {
        if (!(constraints[i].grid() == op.grid))
            throw std::invalid_argument("constrained_coercivity: constraint grid mismatch");
        for (int j = 0; j < n; ++j) c(j, i) = constraints[i][j].real();
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(c);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    for (int i = 0; i < m; ++i)
        if (std::abs(r(i, i)) < 1e-10 * c.col(i).norm())
            throw std::invalid_argument("constrained_coercivity: rank-deficient constraints");
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd basis = q.rightCols(n - m);  // orthonormal complement

    const Eigen::MatrixXd projected = basis.transpose() * op.matrix * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(projected);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("constrained_coercivity: eigensolver failed");

    CoercivityReport rep;
    rep.constrained_min = solver.eigenvalues()(0);
    rep.rho0_reference = rho0();
    const Eigen::VectorXd vmin = basis * solver.eigenvectors().col(0);
    const double dx = op.grid.spacing();
    for (int i = 0; i < m; ++i) {
        const double ci_norm = c.col(i).norm();
        rep.constraint_defects.push_back(std::abs(vmin.dot(c.col(i))) * dx /
                                         (ci_norm > 0 ? ci_norm * std::sqrt(dx) : 1.0));
    }
    return rep;
}

ConstantTable lina_constants() {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    ConstantTable t{};
    t.cases[0] = {1.5, 0.5, 3.0 * pi2 / 32.0};
    t.cases[1] = {0.0, 0.5, 9.0 / pi2};
    t.cases[2] = {0.0, 0.5, 9.0 / (12.0 + pi2)};
    t.rho0 = std::min({t.cases[0].c3(), t.cases[1].c3(), t.cases[2].c3()});
    return t;
}

double rho0() {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return 9.0 / (2.0 * (12.0 + pi2));
}

double h1_coercivity_constant() {
    const double r = rho0();
    return 2.0 * r / (7.0 + 2.0 * r);
}

double dx_coercivity_constant() {
    const double r = rho0();
    return 2.0 * r / (5.0 + 2.0 * r);
}

}  // namespace nlslab

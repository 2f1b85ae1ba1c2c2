#include "nlslab/soliton_group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlslab {

double LieCoeffs::max_abs() const {
    return std::max({std::abs(c1), std::abs(c2), std::abs(c3), std::abs(c4)});
}

double eta(double x) { return 1.0 / std::cosh(x); }

GroupElement group_mul(const GroupElement& g, const GroupElement& g2) {
    GroupElement out;
    out.a = g.a + g2.a / g.mu;
    out.v = g.v + g2.v * g.mu;
    out.gamma = g.gamma + g2.gamma + g.v * g2.a / g.mu;
    out.mu = g.mu * g2.mu;
    return out;
}

GroupElement group_inv(const GroupElement& g) {
    if (g.mu <= 0.0) throw std::invalid_argument("group_inv: mu must be positive");
    GroupElement out;
    out.a = -g.mu * g.a;
    out.v = -g.v / g.mu;
    out.gamma = -g.gamma + g.v * g.a;
    out.mu = 1.0 / g.mu;
    return out;
}

WaveField act(const GroupElement& g, const WaveField& u) {
    if (g.mu <= 0.0) throw std::invalid_argument("act: mu must be positive");
    if (g.mu > 10.0) throw std::invalid_argument("act: mu too large for grid resolution");
    const GridSpec& grid = u.grid();
    std::vector<double> pts(grid.num_points);
    for (int j = 0; j < grid.num_points; ++j) pts[j] = g.mu * (grid.node(j) - g.a);
    std::vector<cplx> vals = evaluate_offgrid(u, pts);
    WaveField out(grid);
    for (int j = 0; j < grid.num_points; ++j) {
        const double phase = g.gamma + g.v * (grid.node(j) - g.a);
        out[j] = std::polar(g.mu, phase) * vals[j];
    }
    return out;
}

WaveField act_on_eta(const GroupElement& g, const GridSpec& grid) {
    WaveField out(grid);
    for (int j = 0; j < grid.num_points; ++j) {
        const double x = grid.node(j);
        const double s = g.mu * (x - g.a);
        out[j] = std::polar(g.mu * eta(s), g.gamma + g.v * (x - g.a));
    }
    return out;
}

WaveField free_soliton(const GroupElement& g0, double t, const GridSpec& grid) {
    WaveField out(grid);
    const double drift = g0.a + g0.v * t;
    const double phase_t = 0.5 * (g0.mu * g0.mu - g0.v * g0.v) * t;
    for (int j = 0; j < grid.num_points; ++j) {
        const double x = grid.node(j);
        const double amp = g0.mu * eta(g0.mu * (x - drift));
        out[j] = std::polar(amp, g0.gamma + g0.v * (x - g0.a) + phase_t);
    }
    return out;
}

double omega(const WaveField& u, const WaveField& w) { return inner(u, w).imag(); }

WaveField lie_apply(int j, const WaveField& u) {
    const GridSpec& grid = u.grid();
    switch (j) {
        case 1: {
            WaveField d = spectral_derivative(u, 1);
            return cplx{-1.0, 0.0} * d;
        }
        case 2: {
            WaveField out(grid);
            for (int i = 0; i < grid.num_points; ++i)
                out[i] = cplx{0.0, grid.node(i)} * u[i];
            return out;
        }
        case 3:
            return cplx{0.0, 1.0} * u;
        case 4: {
            WaveField xu(grid);
            for (int i = 0; i < grid.num_points; ++i) xu[i] = grid.node(i) * u[i];
            return spectral_derivative(xu, 1);
        }
        default:
            throw std::invalid_argument("lie_apply: generator index must be 1..4");
    }
}

WaveField lie_eta(int j, const GridSpec& grid) {
    WaveField out(grid);
    for (int i = 0; i < grid.num_points; ++i) {
        const double x = grid.node(i);
        const double s = eta(x);
        const double th = std::tanh(x);
        switch (j) {
            case 1: out[i] = s * th; break;                  // -d/dx sech
            case 2: out[i] = cplx{0.0, x * s}; break;        // ix sech
            case 3: out[i] = cplx{0.0, s}; break;            // i sech
            case 4: out[i] = s - x * s * th; break;          // d/dx (x sech)
            default: throw std::invalid_argument("lie_eta: generator index must be 1..4");
        }
    }
    return out;
}

LieCoeffs p_functionals(const WaveField& u) {
    const GridSpec& grid = u.grid();
    cplx i1{0, 0}, i2{0, 0}, i3{0, 0}, i4{0, 0};
    for (int j = 0; j < grid.num_points; ++j) {
        const double x = grid.node(j);
        const double s = eta(x);
        const double th = std::tanh(x);
        i1 += u[j] * (x * s);
        i2 += u[j] * (-s * th);      // d/dx sech
        i3 += u[j] * (s - x * s * th);
        i4 += u[j] * s;
    }
    const double dx = grid.spacing();
    LieCoeffs c;
    c.c1 = dx * i1.real();
    c.c2 = -dx * i2.imag();
    c.c3 = dx * i3.imag();
    c.c4 = dx * i4.real();
    return c;
}

WaveField lie_combination(const LieCoeffs& c, const GridSpec& grid) {
    WaveField out(grid);
    const WaveField e1 = lie_eta(1, grid), e2 = lie_eta(2, grid), e3 = lie_eta(3, grid),
                    e4 = lie_eta(4, grid);
    for (int j = 0; j < grid.num_points; ++j)
        out[j] = c.c1 * e1[j] + c.c2 * e2[j] + c.c3 * e3[j] + c.c4 * e4[j];
    return out;
}

WaveField symplectic_orthogonalize(const WaveField& u) {
    return u - lie_combination(p_functionals(u), u.grid());
}

}  // namespace nlslab

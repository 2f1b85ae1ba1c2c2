#include "nlslab/modulation.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace nlslab {

namespace {

// Residual F_j(g) = omega(g^{-1} u - eta, e_j eta), evaluated through the
// conformal pullback so that only closed-form soliton fields are sampled:
// F_j = omega(u - g.eta, g.(e_j eta)) / mu.
std::array<double, 4> residual(const WaveField& u, const GroupElement& g) {
    const GridSpec& grid = u.grid();
    std::array<cplx, 4> acc{};
    for (int j = 0; j < grid.num_points; ++j) {
        const double x = grid.node(j);
        const double s = g.mu * (x - g.a);
        const double se = eta(s);
        const double th = std::tanh(s);
        const cplx phase = std::polar(g.mu, g.gamma + g.v * (x - g.a));
        const cplx diff = u[j] - phase * se;
        const cplx pc = diff * std::conj(phase);
        // generators at the pulled-back coordinate s
        const cplx gen1{se * th, 0.0};
        const cplx gen2{0.0, s * se};
        const cplx gen3{0.0, se};
        const cplx gen4{se - s * se * th, 0.0};
        acc[0] += pc * std::conj(gen1);
        acc[1] += pc * std::conj(gen2);
        acc[2] += pc * std::conj(gen3);
        acc[3] += pc * std::conj(gen4);
    }
    const double scale = grid.spacing() / g.mu;
    return {scale * acc[0].imag(), scale * acc[1].imag(), scale * acc[2].imag(),
            scale * acc[3].imag()};
}

double max_abs(const std::array<double, 4>& r) {
    return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2]), std::abs(r[3])});
}

}  // namespace

GroupElement moment_guess(const WaveField& u) {
    const GridSpec& grid = u.grid();
    double mtot = 0.0, cx = 0.0;
    for (int j = 0; j < grid.num_points; ++j) {
        const double w = std::norm(u[j]);
        mtot += w;
        cx += grid.node(j) * w;
    }
    mtot *= grid.spacing();
    cx *= grid.spacing();
    if (mtot <= 0.0) throw std::invalid_argument("moment_guess: zero field");
    GroupElement g;
    g.a = cx / mtot;
    const WaveField du = spectral_derivative(u, 1);
    cplx mom{0.0, 0.0};
    for (int j = 0; j < grid.num_points; ++j) mom += std::conj(u[j]) * du[j];
    g.v = (grid.spacing() * mom).imag() / mtot;
    g.mu = mtot / 2.0;
    // phase at the nearest node to the centroid
    const int jc = static_cast<int>(std::lround((g.a + grid.half_length) / grid.spacing()));
    const int jcw = ((jc % grid.num_points) + grid.num_points) % grid.num_points;
    g.gamma = std::arg(u[jcw]);
    return g;
}

Decomposition decompose(const WaveField& u, const GroupElement& guess) {
    constexpr int max_iters = 50;
    constexpr double fd_step = 1e-6;
    constexpr double tol = 1e-12;

    GroupElement g = guess;
    std::array<double, 4> F = residual(u, g);
    int iters = 0;
    while (max_abs(F) > tol && iters < max_iters) {
        // centered finite-difference Jacobian in (a, v, gamma, mu)
        double J[4][4];
        for (int p = 0; p < 4; ++p) {
            GroupElement gp = g, gm = g;
            double* fields_p[4] = {&gp.a, &gp.v, &gp.gamma, &gp.mu};
            double* fields_m[4] = {&gm.a, &gm.v, &gm.gamma, &gm.mu};
            *fields_p[p] += fd_step;
            *fields_m[p] -= fd_step;
            const auto Fp = residual(u, gp);
            const auto Fm = residual(u, gm);
            for (int r = 0; r < 4; ++r) J[r][p] = (Fp[r] - Fm[r]) / (2.0 * fd_step);
        }
        // solve J d = -F by Gaussian elimination with partial pivoting
        std::array<double, 4> rhs{-F[0], -F[1], -F[2], -F[3]};
        for (int col = 0; col < 4; ++col) {
            int piv = col;
            for (int r = col + 1; r < 4; ++r)
                if (std::abs(J[r][col]) > std::abs(J[piv][col])) piv = r;
            if (std::abs(J[piv][col]) < 1e-14) {
                iters = max_iters;  // singular Jacobian: report failure
                break;
            }
            if (piv != col) {
                for (int c = 0; c < 4; ++c) std::swap(J[col][c], J[piv][c]);
                std::swap(rhs[col], rhs[piv]);
            }
            for (int r = col + 1; r < 4; ++r) {
                const double f = J[r][col] / J[col][col];
                for (int c = col; c < 4; ++c) J[r][c] -= f * J[col][c];
                rhs[r] -= f * rhs[col];
            }
        }
        if (iters >= max_iters) break;
        std::array<double, 4> d{};
        for (int r = 3; r >= 0; --r) {
            double s = rhs[r];
            for (int c = r + 1; c < 4; ++c) s -= J[r][c] * d[c];
            d[r] = s / J[r][r];
        }
        g.a += d[0];
        g.v += d[1];
        g.gamma += d[2];
        g.mu += d[3];
        if (g.mu <= 0.05) {
            iters = max_iters;  // left any reasonable basin
            break;
        }
        F = residual(u, g);
        ++iters;
    }

    Decomposition out;
    out.g = g;
    out.newton_iters = iters;
    out.converged = max_abs(F) <= 1e-10;
    const WaveField eta_f = sample_real([](double x) { return eta(x); }, u.grid());
    out.w = act(group_inv(g), u) - eta_f;
    double defect = 0.0;
    for (int j = 1; j <= 4; ++j)
        defect = std::max(defect, std::abs(omega(out.w, lie_eta(j, u.grid()))));
    out.orthogonality_defect = defect;
    return out;
}

Decomposition decompose(const WaveField& u) { return decompose(u, moment_guess(u)); }

double mu_from_residual(const WaveField& w) { return 2.0 / (2.0 + l2_norm_sq(w)); }

WaveField apply_linearization(const WaveField& w) {
    const GridSpec& grid = w.grid();
    const WaveField d2 = spectral_derivative(w, 2);
    WaveField out(grid);
    for (int j = 0; j < grid.num_points; ++j) {
        const double e = eta(grid.node(j));
        const double e2 = e * e;
        out[j] = -0.5 * d2[j] - 2.0 * e2 * w[j] - e2 * std::conj(w[j]) + 0.5 * w[j];
    }
    return out;
}

WaveField apply_nonlinearity(const WaveField& w) {
    const GridSpec& grid = w.grid();
    WaveField out(grid);
    for (int j = 0; j < grid.num_points; ++j) {
        const double e = eta(grid.node(j));
        const double a2 = std::norm(w[j]);
        out[j] = 2.0 * a2 * e + e * w[j] * w[j] + a2 * w[j];
    }
    return out;
}

double h1_error_to_soliton(const WaveField& u, const GroupElement& g) {
    return std::sqrt(h1_norm_sq(u - act_on_eta(g, u.grid())));
}

std::vector<LieCoeffs> modulation_residual(const std::vector<Decomposition>& traj,
                                           double dt_between, double q) {
    const int n = static_cast<int>(traj.size());
    if (n < 3) throw std::invalid_argument("modulation_residual: need at least 3 frames");
    if (dt_between <= 0.0) throw std::invalid_argument("modulation_residual: dt must be positive");

    auto param = [&](int i, int p) {
        const GroupElement& g = traj[i].g;
        switch (p) {
            case 0: return g.a;
            case 1: return g.v;
            case 2: return g.gamma;
            default: return g.mu;
        }
    };
    // 2nd-order differentiation: centered inside, one-sided at the ends
    auto deriv = [&](int i, int p) {
        const double h = dt_between;
        if (i == 0)
            return (-3.0 * param(0, p) + 4.0 * param(1, p) - param(2, p)) / (2.0 * h);
        if (i == n - 1)
            return (3.0 * param(n - 1, p) - 4.0 * param(n - 2, p) + param(n - 3, p)) / (2.0 * h);
        return (param(i + 1, p) - param(i - 1, p)) / (2.0 * h);
    };

    std::vector<LieCoeffs> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const GroupElement& g = traj[i].g;
        const double da = deriv(i, 0), dv = deriv(i, 1), dg = deriv(i, 2), dmu = deriv(i, 3);
        const double s = g.mu * g.a;
        const double e2 = eta(s) * eta(s);
        const double de2 = -2.0 * e2 * std::tanh(s);  // d/dx sech^2
        LieCoeffs c;
        c.c1 = -g.mu * da + g.v * g.mu;
        c.c2 = -0.5 * q * g.mu * de2 - dv / g.mu;
        c.c3 = -g.mu * q * e2 - 0.5 * q * g.a * g.mu * g.mu * de2 - dg + g.v * da -
               0.5 * g.v * g.v + 0.5 * g.mu * g.mu;
        c.c4 = -dmu / g.mu;
        out.push_back(c);
    }
    return out;
}

}  // namespace nlslab

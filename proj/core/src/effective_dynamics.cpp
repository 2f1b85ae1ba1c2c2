#include "nlslab/effective_dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {

EffectiveState EffectiveTrajectory::at_time(double t) const {
    if (states.empty()) throw std::logic_error("EffectiveTrajectory: empty");
    if (t <= states.front().t) return states.front();
    if (t >= states.back().t) return states.back();
    const double s = (t - states.front().t) / dt;
    const auto i = static_cast<std::size_t>(s);
    const double f = s - static_cast<double>(i);
    const EffectiveState& lo = states[i];
    const EffectiveState& hi = states[i + 1];
    EffectiveState out;
    out.a = lo.a + f * (hi.a - lo.a);
    out.v = lo.v + f * (hi.v - lo.v);
    out.gamma = lo.gamma + f * (hi.gamma - lo.gamma);
    out.mu = lo.mu + f * (hi.mu - lo.mu);
    out.t = t;
    return out;
}

EffectiveDeriv rhs_delta(const EffectiveState& s, double q) {
    const double se = eta(s.mu * s.a);
    const double th = std::tanh(s.mu * s.a);
    EffectiveDeriv d;
    d.da = s.v;
    d.dv = q * s.mu * s.mu * se * se * th;
    d.dmu = 0.0;
    d.dgamma = 0.5 * s.v * s.v + 0.5 * s.mu * s.mu - q * s.mu * se * se +
               q * s.mu * s.mu * s.a * se * se * th;
    return d;
}

EffectiveDeriv rhs_general(const EffectiveState& s, const PotentialSpec& V) {
    if (V.kind == PotentialSpec::Kind::none) {
        EffectiveDeriv d;
        d.da = s.v;
        d.dv = 0.0;
        d.dmu = 0.0;
        d.dgamma = 0.5 * s.v * s.v + 0.5 * s.mu * s.mu;
        return d;
    }
    if (V.kind != PotentialSpec::Kind::sampled)
        throw std::invalid_argument("rhs_general: needs a sampled potential");
    const WaveField& p = *V.profile;
    const GridSpec& grid = p.grid();
    const double mu = s.mu;
    // potential term T = (mu^2/2) I, I(a,mu) = dx sum V_j sech^2(mu (x_j - a))
    double I = 0.0, Ia = 0.0, Imu = 0.0;
    for (int j = 0; j < grid.num_points; ++j) {
        const double r = grid.node(j) - s.a;
        const double se = eta(mu * r);
        const double th = std::tanh(mu * r);
        const double vj = p[j].real();
        I += vj * se * se;
        Ia += vj * 2.0 * mu * se * se * th;
        Imu += vj * (-2.0) * r * se * se * th;
    }
    const double dx = grid.spacing();
    I *= dx;
    Ia *= dx;
    Imu *= dx;
    const double f_a = 0.5 * mu * mu * Ia;
    const double f_mu = 0.5 * s.v * s.v - 0.5 * mu * mu + mu * I + 0.5 * mu * mu * Imu;
    EffectiveDeriv d;
    d.da = s.v;
    d.dv = -f_a / mu;
    d.dmu = 0.0;  // f_gamma = 0
    d.dgamma = s.v * s.v - f_mu;
    return d;
}

EffectiveDeriv rhs_bare_newton(const EffectiveState& s,
                               const std::function<double(double)>& w_of_x,
                               const std::function<double(double)>& dw_of_x, double h) {
    EffectiveDeriv d;
    d.da = s.v;
    d.dv = -h * dw_of_x(h * s.a);
    d.dgamma = 0.5 + 0.5 * s.v * s.v - w_of_x(h * s.a);
    d.dmu = 0.0;
    return d;
}

EffectiveTrajectory integrate_effective(const EffectiveState& s0, const EffectiveRhs& rhs,
                                        double t_final, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("integrate_effective: dt must be positive");
    if (t_final < 0.0) throw std::invalid_argument("integrate_effective: t_final must be >= 0");
    EffectiveTrajectory traj;
    traj.dt = dt;
    EffectiveState s = s0;
    traj.states.push_back(s);
    auto step = [&](const EffectiveState& y) {
        auto advance = [&](const EffectiveState& base, const EffectiveDeriv& k, double frac) {
            EffectiveState z = base;
            z.a += frac * dt * k.da;
            z.v += frac * dt * k.dv;
            z.gamma += frac * dt * k.dgamma;
            z.mu += frac * dt * k.dmu;
            z.t += frac * dt;
            return z;
        };
        const EffectiveDeriv k1 = rhs(y);
        const EffectiveDeriv k2 = rhs(advance(y, k1, 0.5));
        const EffectiveDeriv k3 = rhs(advance(y, k2, 0.5));
        const EffectiveDeriv k4 = rhs(advance(y, k3, 1.0));
        EffectiveState z = y;
        z.a += dt / 6.0 * (k1.da + 2 * k2.da + 2 * k3.da + k4.da);
        z.v += dt / 6.0 * (k1.dv + 2 * k2.dv + 2 * k3.dv + k4.dv);
        z.gamma += dt / 6.0 * (k1.dgamma + 2 * k2.dgamma + 2 * k3.dgamma + k4.dgamma);
        z.mu += dt / 6.0 * (k1.dmu + 2 * k2.dmu + 2 * k3.dmu + k4.dmu);
        z.t += dt;
        return z;
    };
    while (s.t < t_final - 0.5 * dt) {
        s = step(s);
        if (!std::isfinite(s.a) || !std::isfinite(s.v) || !std::isfinite(s.gamma) ||
            !std::isfinite(s.mu))
            throw std::runtime_error("integrate_effective: non-finite state at t = " +
                                     std::to_string(s.t));
        traj.states.push_back(s);
    }
    return traj;
}

std::optional<double> turning_point(double v_incoming, double q) {
    if (q <= 0.0) throw std::invalid_argument("turning_point: q must be positive");
    if (v_incoming <= 0.0) throw std::invalid_argument("turning_point: v must be positive");
    const double y = v_incoming / std::sqrt(q);
    if (y >= 1.0) return std::nullopt;  // pass-over
    // sech^{-1}(y) = log((1 + sqrt(1 - y^2)) / y), stable near y = 1
    return std::log((1.0 + std::sqrt((1.0 - y) * (1.0 + y))) / y);
}

double tanh_sinh(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
    const double c = 0.5 * (lo + hi);
    const double r = 0.5 * (hi - lo);
    const double tmax = 4.0;
    const double half_pi = 1.5707963267948966;
    auto level_sum = [&](double h, bool odd_only) {
        double acc = 0.0;
        const int start = odd_only ? 1 : 0;
        const int stride = odd_only ? 2 : 1;
        const int n = static_cast<int>(tmax / h);
        for (int i = start; i <= n; i += stride) {
            for (int sign : {-1, 1}) {
                if (i == 0 && sign == 1) continue;
                const double t = sign * i * h;
                const double u = half_pi * std::sinh(t);
                const double x = c + r * std::tanh(u);
                const double w = r * half_pi * std::cosh(t) / (std::cosh(u) * std::cosh(u));
                if (x <= lo || x >= hi || w < 1e-300) continue;
                const double fx = f(x);
                if (std::isfinite(fx)) acc += w * fx;
            }
        }
        return acc;
    };
    double h = 0.5;
    double sum = level_sum(h, false) * h;  // i = 0 enters once via the sign loop
    double prev = sum;
    for (int lvl = 0; lvl < 12; ++lvl) {
        h *= 0.5;
        const double add = level_sum(h, true);
        sum = 0.5 * prev + h * add;
        if (lvl > 2 && std::abs(sum - prev) <= rel_tol * std::abs(sum)) return sum;
        prev = sum;
    }
    return sum;
}

double oscillation_period(double a0, double q) {
    if (q >= 0.0) throw std::invalid_argument("oscillation_period: q must be negative");
    if (a0 == 0.0) throw std::invalid_argument("oscillation_period: a0 must be nonzero");
    const double A = -std::abs(a0);
    const double ea = eta(A);
    auto integrand = [&](double x) {
        const double d = eta(x) * eta(x) - ea * ea;
        return 2.0 / std::sqrt(d);
    };
    return tanh_sinh(integrand, A, -A) / std::sqrt(std::abs(q));
}

}  // namespace nlslab

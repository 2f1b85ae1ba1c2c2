#include "nlslab/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace nlslab {

double GridSpec::wavenumber(int m) const {
    const double base = std::numbers::pi / half_length;
    return base * (m <= num_points / 2 ? m : m - num_points);
}

GridSpec GridSpec::make(double half_length, int num_points) {
    if (half_length <= 0.0) throw std::invalid_argument("GridSpec: half_length must be positive");
    if (num_points < 4 || num_points % 2 != 0)
        throw std::invalid_argument("GridSpec: num_points must be even and >= 4");
    return GridSpec{half_length, num_points};
}

WaveField::WaveField(GridSpec grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (static_cast<int>(samples_.size()) != grid_.num_points)
        throw std::invalid_argument("WaveField: sample count does not match grid");
}

WaveField::WaveField(GridSpec grid) : grid_(grid), samples_(grid.num_points, cplx{0.0, 0.0}) {}

bool WaveField::all_finite() const {
    for (const auto& s : samples_)
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) return false;
    return true;
}

static void check_same_grid(const WaveField& a, const WaveField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("WaveField: grid mismatch");
}

WaveField operator+(const WaveField& a, const WaveField& b) {
    check_same_grid(a, b);
    WaveField out(a.grid());
    for (int j = 0; j < a.size(); ++j) out[j] = a[j] + b[j];
    return out;
}

WaveField operator-(const WaveField& a, const WaveField& b) {
    check_same_grid(a, b);
    WaveField out(a.grid());
    for (int j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
    return out;
}

WaveField operator*(cplx c, const WaveField& u) {
    WaveField out(u.grid());
    for (int j = 0; j < u.size(); ++j) out[j] = c * u[j];
    return out;
}

WaveField sample(const std::function<cplx(double)>& f, const GridSpec& grid) {
    WaveField out(grid);
    for (int j = 0; j < grid.num_points; ++j) {
        const cplx v = f(grid.node(j));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("sample: non-finite value at x = " +
                                        std::to_string(grid.node(j)));
        out[j] = v;
    }
    return out;
}

WaveField sample_real(const std::function<double(double)>& f, const GridSpec& grid) {
    return sample([&f](double x) { return cplx{f(x), 0.0}; }, grid);
}

cplx integrate(const WaveField& u) {
    cplx acc{0.0, 0.0};
    for (const auto& s : u.samples()) acc += s;
    return u.grid().spacing() * acc;
}

cplx inner(const WaveField& u, const WaveField& w) {
    check_same_grid(u, w);
    cplx acc{0.0, 0.0};
    for (int j = 0; j < u.size(); ++j) acc += u[j] * std::conj(w[j]);
    return u.grid().spacing() * acc;
}

double l2_norm_sq(const WaveField& u) {
    double acc = 0.0;
    for (const auto& s : u.samples()) acc += std::norm(s);
    return u.grid().spacing() * acc;
}

namespace fourier {

// FFTW plans are cached per transform size. Plan creation is not
// thread-safe; execution on caller-owned buffers is.
namespace {
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
    static std::mutex mtx;
    static std::unordered_map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> tmp(n);
    auto* p = reinterpret_cast<fftw_complex*>(tmp.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    pp.bwd = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
    return cache.emplace(n, pp).first->second;
}
}  // namespace

void forward(std::vector<cplx>& a) {
    auto& pp = plans_for(static_cast<int>(a.size()));
    auto* p = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(pp.fwd, p, p);
}

void inverse(std::vector<cplx>& a) {
    auto& pp = plans_for(static_cast<int>(a.size()));
    auto* p = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(pp.bwd, p, p);
    const double scale = 1.0 / static_cast<double>(a.size());
    for (auto& v : a) v *= scale;
}

}  // namespace fourier

WaveField spectral_derivative(const WaveField& u, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("spectral_derivative: order must be 1 or 2");
    const int n = u.size();
    std::vector<cplx> modes(u.samples().begin(), u.samples().end());
    fourier::forward(modes);
    for (int m = 0; m < n; ++m) {
        const double k = u.grid().wavenumber(m);
        if (order == 1) {
            modes[m] *= cplx{0.0, k};
            if (m == n / 2) modes[m] = 0.0;  // Nyquist
        } else {
            modes[m] *= -k * k;
        }
    }
    fourier::inverse(modes);
    return WaveField(u.grid(), std::move(modes));
}

double h1_norm_sq(const WaveField& u) {
    return l2_norm_sq(u) + l2_norm_sq(spectral_derivative(u, 1));
}

std::vector<cplx> evaluate_offgrid(const WaveField& u, std::span<const double> x) {
    constexpr int refine = 16;   // zero-padding factor
    constexpr int half = 3;      // 6-point Lagrange stencil
    const int n = u.size();
    const int nf = n * refine;

    std::vector<cplx> modes(u.samples().begin(), u.samples().end());
    fourier::forward(modes);
    std::vector<cplx> fine(nf, cplx{0.0, 0.0});
    // split the Nyquist mode symmetrically
    for (int m = 0; m < n / 2; ++m) fine[m] = modes[m];
    fine[n / 2] = 0.5 * modes[n / 2];
    fine[nf - n / 2] = 0.5 * modes[n / 2];
    for (int m = n / 2 + 1; m < n; ++m) fine[nf - n + m] = modes[m];
    fourier::inverse(fine);
    // inverse divided by nf but the coefficients came from an n-point FFT
    for (auto& v : fine) v *= static_cast<double>(refine);

    const double L = u.grid().half_length;
    const double hf = 2.0 * L / nf;
    std::vector<cplx> out;
    out.reserve(x.size());
    for (double xv : x) {
        // wrap into [-L, L)
        double y = std::fmod(xv + L, 2.0 * L);
        if (y < 0.0) y += 2.0 * L;
        const double s = y / hf;  // fine-grid coordinate
        const int j0 = static_cast<int>(std::floor(s));
        const double frac = s - j0;
        // 6-point Lagrange centred on the interval [j0, j0+1]
        cplx acc{0.0, 0.0};
        for (int m = -half + 1; m <= half; ++m) {
            double wgt = 1.0;
            for (int l = -half + 1; l <= half; ++l) {
                if (l == m) continue;
                wgt *= (frac - l) / static_cast<double>(m - l);
            }
            int idx = j0 + m;
            idx = ((idx % nf) + nf) % nf;
            acc += wgt * fine[idx];
        }
        out.push_back(acc);
    }
    return out;
}

}  // namespace nlslab

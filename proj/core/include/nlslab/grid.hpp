#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace nlslab {

using cplx = std::complex<double>;

/// Uniform periodic grid on [-L, L). N must be even so that x = 0 lands
/// exactly on a node (the delta potential is evaluated there).
struct GridSpec {
    double half_length = 30.0;
    int num_points = 4096;

    double spacing() const { return 2.0 * half_length / num_points; }
    double node(int j) const { return -half_length + j * spacing(); }
    int origin_index() const { return num_points / 2; }

    /// Fourier wavenumber of mode m in FFT ordering.
    double wavenumber(int m) const;

    static GridSpec make(double half_length, int num_points);

    bool operator==(const GridSpec&) const = default;
};

/// Complex field samples on a GridSpec; the discrete u(.,t).
class WaveField {
public:
    WaveField() = default;
    WaveField(GridSpec grid, std::vector<cplx> samples);
    explicit WaveField(GridSpec grid);  // zero field

    const GridSpec& grid() const { return grid_; }
    std::span<const cplx> samples() const { return samples_; }
    std::span<cplx> samples() { return samples_; }
    cplx operator[](int j) const { return samples_[j]; }
    cplx& operator[](int j) { return samples_[j]; }
    int size() const { return static_cast<int>(samples_.size()); }

    cplx at_origin() const { return samples_[grid_.origin_index()]; }

    bool all_finite() const;

private:
    GridSpec grid_;
    std::vector<cplx> samples_;
};

WaveField operator+(const WaveField& a, const WaveField& b);
WaveField operator-(const WaveField& a, const WaveField& b);
WaveField operator*(cplx c, const WaveField& u);

/// Sample a scalar function on the grid nodes. Throws if any value is
/// non-finite.
WaveField sample(const std::function<cplx(double)>& f, const GridSpec& grid);
WaveField sample_real(const std::function<double(double)>& f, const GridSpec& grid);

/// Periodic rectangle rule: dx * sum of samples. Spectrally accurate for
/// smooth fields whose tails are below roundoff at the boundary.
cplx integrate(const WaveField& u);

/// L2 pairing integral u * conj(w).
cplx inner(const WaveField& u, const WaveField& w);

double l2_norm_sq(const WaveField& u);

/// Fourier-multiplier derivative, order 1 or 2. The Nyquist mode is zeroed
/// for odd orders.
WaveField spectral_derivative(const WaveField& u, int order);

/// Integral of |u|^2 + |du|^2.
double h1_norm_sq(const WaveField& u);

/// Evaluate u at arbitrary points by trigonometric interpolation
/// (zero-padded FFT refinement + local Lagrange stencil). Points are
/// wrapped periodically into [-L, L).
std::vector<cplx> evaluate_offgrid(const WaveField& u, std::span<const double> x);

namespace fourier {
/// In-place forward/inverse FFT. Inverse includes the 1/N factor so the
/// pair is an identity.
void forward(std::vector<cplx>& a);
void inverse(std::vector<cplx>& a);
}  // namespace fourier

}  // namespace nlslab

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "nlslab/grid.hpp"
#include "test_util.hpp"

using namespace nlslab;
using std::numbers::pi;

namespace {
const GridSpec G = GridSpec::make(20.0, 1024);

double sech(double x) { return 1.0 / std::cosh(x); }
}  // namespace

TEST_CASE("GridSpec layout") {
    CHECK(G.spacing() == doctest::Approx(40.0 / 1024).epsilon(1e-15));
    CHECK(G.node(G.origin_index()) == 0.0);
    CHECK(G.node(0) == -20.0);
    CHECK_THROWS(GridSpec::make(20.0, 1023));  // odd N
    CHECK_THROWS(GridSpec::make(20.0, 2));
    CHECK_THROWS(GridSpec::make(-1.0, 1024));
}

TEST_CASE("wavenumber ordering") {
    CHECK(G.wavenumber(0) == 0.0);
    CHECK(G.wavenumber(1) == doctest::Approx(pi / 20.0));
    CHECK(G.wavenumber(G.num_points - 1) == doctest::Approx(-pi / 20.0));
}

TEST_CASE("sample basics") {
    const WaveField z = sample_real([](double) { return 0.0; }, G);
    for (int j = 0; j < z.size(); ++j) CHECK(z[j] == cplx{0.0, 0.0});

    const WaveField s = sample_real(sech, G);
    double mx = 0.0;
    for (int j = 0; j < s.size(); ++j) mx = std::max(mx, std::abs(s[j]));
    CHECK(mx == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.at_origin().real() == 1.0);

    CHECK_THROWS(sample_real([](double x) { return 1.0 / x; }, G));  // inf at node x=0
}

TEST_CASE("quadrature reproduces the sech integrals") {
    auto quad = [&](auto f) { return integrate(sample_real(f, G)).real(); };
    CHECK(std::abs(quad([](double x) { return sech(x) * sech(x); }) - 2.0) < 1e-10);
    CHECK(std::abs(quad([](double x) { return std::pow(sech(x), 3); }) - pi / 2.0) < 1e-10);
    CHECK(std::abs(quad([](double x) { return std::pow(sech(x), 4); }) - 4.0 / 3.0) < 1e-10);
    CHECK(std::abs(quad([](double x) { return x * x * sech(x) * sech(x); }) - pi * pi / 6.0) <
          1e-10);
    const double th2 = quad([](double x) {
        const double t = std::tanh(x);
        return t * t * sech(x) * sech(x);
    });
    CHECK(std::abs(th2 - 2.0 / 3.0) < 1e-10);
}

TEST_CASE("spectral derivative") {
    const WaveField c = sample_real([](double) { return 1.25; }, G);
    const WaveField dc = spectral_derivative(c, 1);
    CHECK(std::sqrt(l2_norm_sq(dc)) < 1e-12);

    const WaveField s = sample_real(sech, G);
    const WaveField ds = spectral_derivative(s, 1);
    CHECK(std::abs(ds.at_origin()) < 1e-10);  // even function

    // integral of (d/dx (x sech))^2 = (12 + pi^2) / 18
    const WaveField xs = sample_real([](double x) { return x * sech(x); }, G);
    const WaveField dxs = spectral_derivative(xs, 1);
    CHECK(std::abs(l2_norm_sq(dxs) - (12.0 + pi * pi) / 18.0) < 1e-8);

    // second derivative consistency
    const WaveField d2 = spectral_derivative(s, 2);
    const WaveField dd = spectral_derivative(ds, 1);
    CHECK(std::sqrt(l2_norm_sq(d2 - dd)) < 1e-8);
    CHECK_THROWS(spectral_derivative(s, 3));
}

TEST_CASE("spectral derivative is linear and commutes with complex scaling") {
    std::mt19937 rng(7);
    const WaveField u = testutil::random_smooth_field(G, rng);
    const WaveField w = testutil::random_smooth_field(G, rng);
    const cplx c{0.3, -1.1};
    const WaveField lhs = spectral_derivative(c * u + w, 1);
    const WaveField rhs = c * spectral_derivative(u, 1) + spectral_derivative(w, 1);
    CHECK(std::sqrt(l2_norm_sq(lhs - rhs)) < 1e-10);
}

TEST_CASE("h1 norm") {
    CHECK(h1_norm_sq(WaveField(G)) == 0.0);
    const WaveField s = sample_real(sech, G);
    CHECK(std::abs(h1_norm_sq(s) - 8.0 / 3.0) < 1e-8);  // 2 + 2/3
    const WaveField s3 = cplx{3.0, 0.0} * s;
    CHECK(h1_norm_sq(s3) == doctest::Approx(9.0 * h1_norm_sq(s)).epsilon(1e-12));
}

TEST_CASE("Parseval") {
    std::mt19937 rng(11);
    const WaveField u = testutil::random_smooth_field(G, rng);
    std::vector<cplx> modes(u.samples().begin(), u.samples().end());
    fourier::forward(modes);
    double modal = 0.0;
    for (const auto& m : modes) modal += std::norm(m);
    modal *= G.spacing() / G.num_points;
    CHECK(std::abs(modal - l2_norm_sq(u)) < 1e-12 * l2_norm_sq(u));
}

TEST_CASE("FFT round trip") {
    std::mt19937 rng(13);
    const WaveField u = testutil::random_smooth_field(G, rng);
    std::vector<cplx> buf(u.samples().begin(), u.samples().end());
    fourier::forward(buf);
    fourier::inverse(buf);
    double err = 0.0;
    for (int j = 0; j < u.size(); ++j) err = std::max(err, std::abs(buf[j] - u[j]));
    CHECK(err < 1e-13);
}

TEST_CASE("off-grid evaluation") {
    const WaveField s = sample([](double x) { return std::polar(sech(x), 0.7 * x); }, G);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> pts(-8.0, 8.0);
    std::vector<double> xs;
    for (int i = 0; i < 50; ++i) xs.push_back(pts(rng));
    xs.push_back(G.node(100));              // exact node
    xs.push_back(-20.0 - G.spacing());      // wraps periodically
    const auto vals = evaluate_offgrid(s, xs);
    for (std::size_t i = 0; i < xs.size() - 1; ++i) {
        const cplx exact = std::polar(sech(xs[i]), 0.7 * xs[i]);
        CHECK(std::abs(vals[i] - exact) < 1e-10);
    }
    // the wrapped point lands just inside the right edge, where the field is tiny
    CHECK(std::abs(vals.back()) < 1e-6);
}

TEST_CASE("integrate and inner agree") {
    std::mt19937 rng(19);
    const WaveField u = testutil::random_smooth_field(G, rng);
    CHECK(std::abs(inner(u, u).real() - l2_norm_sq(u)) < 1e-12);
    CHECK(std::abs(inner(u, u).imag()) < 1e-12);
}

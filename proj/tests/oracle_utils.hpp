#pragma once

// Test-only oracles, independent of the library's transform path:
// a direct O(n^4) DFT, a direct convolution sum for the advection flux,
// and deterministic random-field generators.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "sqg/spectral_field.hpp"
#include "sqg/spectral_ops.hpp"

namespace sqg::test {

/// Platform-stable uniform double in [0,1) from a raw 64-bit draw.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Direct DFT sum c_k = (1/n^2) sum_x f(x) e^{-i xi_k . x}.
inline SpectralField brute_force_dft(const std::vector<double>& phys, const GridSpec& grid) {
    const int n = grid.n_points;
    SpectralField out(grid);
    for (int kx = 0; kx < n; ++kx) {
        for (int ky = 0; ky < n; ++ky) {
            std::complex<double> acc(0.0, 0.0);
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) {
                    const double phase =
                        -2.0 * M_PI * (static_cast<double>(kx) * a + static_cast<double>(ky) * b) / n;
                    acc += phys[static_cast<std::size_t>(a) * n + b] *
                           std::complex<double>(std::cos(phase), std::sin(phase));
                }
            }
            out.at(kx, ky) = acc / static_cast<double>(n * n);
        }
    }
    return out;
}

/// Random real field with unit-scale entries; same seed, same samples.
inline std::vector<double> random_physical(const GridSpec& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(grid.size());
    for (double& x : v) x = 2.0 * uniform01(rng) - 1.0;
    return v;
}

/// Random field restricted to the 2/3-rule band (the solver's state space).
inline SpectralField random_band_limited(const GridSpec& grid, std::uint64_t seed) {
    SpectralField f = forward_transform(random_physical(grid, seed), grid);
    dealias_inplace(f);
    return f;
}

/// Random smooth field: random phases under a Gaussian spectral envelope.
inline SpectralField random_smooth(const GridSpec& grid, std::uint64_t seed, double spectral_scale) {
    std::mt19937_64 rng(seed);
    std::vector<double> phys(grid.size(), 0.0);
    const int n = grid.n_points;
    SpectralField f(grid);
    for (int ix = 0; ix < n; ++ix) {
        const double kx = grid.wavenumber(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = grid.wavenumber(iy);
            const double mag = std::hypot(kx, ky);
            const double amp = std::exp(-0.5 * mag * mag / (spectral_scale * spectral_scale));
            const double phase = 2.0 * M_PI * uniform01(rng);
            f.at(ix, iy) = amp * std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    // Hermitian-symmetrize and hand back through physical space to make the
    // coefficients exactly those of a real field.
    std::vector<std::complex<double>> tmp;
    std::vector<double> re = inverse_transform(f);
    SpectralField out = forward_transform(re, grid);
    dealias_inplace(out);
    return out;
}

/// Linear (non-circular) convolution of u theta restricted to |k_i| <= n/3,
/// then the divergence multiplier. Valid oracle for band-limited theta.
inline SpectralField direct_divergence_flux(const SpectralField& theta) {
    const GridSpec& grid = theta.grid;
    const int n = grid.n_points;
    const int half = n / 2;
    VelocityField u = riesz_velocity(theta);
    SpectralField out(grid);
    const int limit = grid.dealias_limit();
    for (int kx = -limit; kx <= limit; ++kx) {
        for (int ky = -limit; ky <= limit; ++ky) {
            std::complex<double> w1(0.0, 0.0), w2(0.0, 0.0);
            for (int px = -half; px < half; ++px) {
                const int qx = kx - px;
                if (qx < -half || qx >= half) continue;
                for (int py = -half; py < half; ++py) {
                    const int qy = ky - py;
                    if (qy < -half || qy >= half) continue;
                    const std::complex<double> th = theta.mode(qx, qy);
                    w1 += u.u1.mode(px, py) * th;
                    w2 += u.u2.mode(px, py) * th;
                }
            }
            const double xi1 = grid.mode_spacing() * kx;
            const double xi2 = grid.mode_spacing() * ky;
            out.mode(kx, ky) = std::complex<double>(0.0, 1.0) * (xi1 * w1 + xi2 * w2);
        }
    }
    return out;
}

}  // namespace sqg::test

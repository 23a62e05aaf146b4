#include "sqg/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sqg/evolution.hpp"
#include "sqg/fft.hpp"
#include "sqg/spectral_ops.hpp"

namespace sqg {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Nearest-image displacement on the periodic axis, in [-L/2, L/2).
double wrapped(double d, double L) {
    d = std::fmod(d, L);
    if (d < -0.5 * L) d += L;
    if (d >= 0.5 * L) d -= L;
    return d;
}

std::vector<double> sample_radial_bump(const ProfileSpec& spec, const GridSpec& grid,
                                       bool gaussian) {
    const int n = grid.n_points;
    const double L = grid.box_length;
    const double h = grid.grid_spacing();
    const double c = 0.5 * L;
    const double ell = spec.length_scale;
    std::vector<double> v(grid.size());
    for (int a = 0; a < n; ++a) {
        const double dx = wrapped(a * h - c, L);
        for (int b = 0; b < n; ++b) {
            const double dy = wrapped(b * h - c, L);
            const double r2 = (dx * dx + dy * dy) / (ell * ell);
            const double val = gaussian ? std::exp(-0.5 * r2) : 1.0 / ((1.0 + r2) * (1.0 + r2));
            v[static_cast<std::size_t>(a) * n + b] = spec.amplitude * val;
        }
    }
    return v;
}

SpectralField ring_spectrum(const ProfileSpec& spec, const GridSpec& grid) {
    const double xi_ring = 2.0 * M_PI / spec.length_scale;
    const double xi_edge = grid.mode_spacing() * grid.dealias_limit();
    if (1.5 * xi_ring > xi_edge)
        throw std::invalid_argument(
            "generate: ring_spectrum_random length_scale places the ring outside the dealiased "
            "band");
    std::mt19937_64 rng(spec.seed);
    const int nn = grid.n_points;
    SpectralField f(grid);
    for (int ix = 0; ix < nn; ++ix) {
        const double kx = grid.wavenumber(ix);
        for (int iy = 0; iy < nn; ++iy) {
            const double ky = grid.wavenumber(iy);
            const double mag = std::hypot(kx, ky);
            // Draw a phase for every mode so the stream stays aligned across
            // grids of equal n regardless of which modes land on the ring.
            const double phase = 2.0 * M_PI * uniform01(rng);
            if (mag < 0.5 * xi_ring || mag > 1.5 * xi_ring) continue;
            const double t = (mag - xi_ring) / (0.25 * xi_ring);
            const double amp = std::exp(-t * t);
            f.at(ix, iy) = amp * complex(std::cos(phase), std::sin(phase));
        }
    }
    // Symmetrize so the field is exactly real, then rescale to the requested
    // L2 amplitude.
    const int n = grid.n_points;
    SpectralField sym(grid);
    for (int ix = 0; ix < n; ++ix) {
        const int jx = (n - ix) % n;
        for (int iy = 0; iy < n; ++iy) {
            const int jy = (n - iy) % n;
            sym.at(ix, iy) = 0.5 * (f.at(ix, iy) + std::conj(f.at(jx, jy)));
        }
    }
    const double norm = l2_norm_spectral(sym);
    if (norm > 0.0) {
        const double scale = spec.amplitude / norm;
        for (complex& c : sym.coeff) c *= scale;
    }
    return sym;
}

}  // namespace

SpectralField generate(const ProfileSpec& spec, const GridSpec& grid) {
    if (!std::isfinite(spec.amplitude))
        throw std::invalid_argument("generate: amplitude must be finite");
    if (!(spec.length_scale > 0.0))
        throw std::invalid_argument("generate: length_scale must be positive");
    if (spec.kind != ProfileKind::single_mode && spec.length_scale > grid.box_length / 8.0)
        throw std::invalid_argument("generate: length_scale must be <= box_length/8");

    SpectralField out(grid);
    switch (spec.kind) {
        case ProfileKind::gaussian:
            out = forward_transform(sample_radial_bump(spec, grid, true), grid);
            break;
        case ProfileKind::algebraic_bump:
            out = forward_transform(sample_radial_bump(spec, grid, false), grid);
            break;
        case ProfileKind::single_mode: {
            const double k_real = grid.box_length / spec.length_scale;
            const int k = static_cast<int>(std::lround(k_real));
            if (std::abs(k_real - k) > 1e-9 || k < 1 || k >= grid.n_points / 2)
                throw std::invalid_argument(
                    "generate: single_mode length_scale must equal box_length/k for an integer "
                    "mode k in [1, n/2)");
            out.mode(k, 0) = complex(0.5 * spec.amplitude, 0.0);
            out.mode(-k, 0) = complex(0.5 * spec.amplitude, 0.0);
            break;
        }
        case ProfileKind::ring_spectrum_random:
            out = ring_spectrum(spec, grid);
            break;
    }

    if (spec.target_norm) {
        const double current = lp_norm(out, spec.target_norm->p);
        if (!(current > 0.0))
            throw std::invalid_argument("generate: cannot rescale a zero-norm field");
        const double scale = spec.target_norm->value / current;
        for (complex& c : out.coeff) c *= scale;
    }
    return out;
}

SpectralField lambda_rescale(const SpectralField& theta0, double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0)
        throw std::invalid_argument("lambda_rescale: lambda must lie in (0, 1]");
    if (lambda == 1.0) return theta0;

    const GridSpec& grid = theta0.grid;
    const int n = grid.n_points;
    const double h = grid.grid_spacing();
    const double c = 0.5 * grid.box_length;

    // E[a][i] = exp(i xi_i x'_a) with x'_a = c + lambda (a h - c).
    std::vector<complex> E(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        const double x = c + lambda * (a * h - c);
        for (int i = 0; i < n; ++i) {
            const double phase = grid.wavenumber(i) * x;
            E[static_cast<std::size_t>(a) * n + i] = complex(std::cos(phase), std::sin(phase));
        }
    }

    // T[i][b] = sum_j coeff[i][j] E[b][j]
    std::vector<complex> T(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int b = 0; b < n; ++b) {
            complex acc(0.0, 0.0);
            const complex* row = &theta0.coeff[static_cast<std::size_t>(i) * n];
            const complex* eb = &E[static_cast<std::size_t>(b) * n];
            for (int j = 0; j < n; ++j) acc += row[j] * eb[j];
            T[static_cast<std::size_t>(i) * n + b] = acc;
        }
    }

    std::vector<double> samples(grid.size());
    for (int a = 0; a < n; ++a) {
        const complex* ea = &E[static_cast<std::size_t>(a) * n];
        for (int b = 0; b < n; ++b) {
            complex acc(0.0, 0.0);
            for (int i = 0; i < n; ++i) acc += ea[i] * T[static_cast<std::size_t>(i) * n + b];
            samples[static_cast<std::size_t>(a) * n + b] = lambda * acc.real();
        }
    }
    return forward_transform(samples, grid);
}

std::vector<SlowDecayPoint> slow_decay_experiment(const SpectralField& theta0,
                                                  const std::vector<double>& lambdas, double T,
                                                  const SimConfig& config) {
    if (lambdas.empty()) throw std::invalid_argument("slow_decay_experiment: empty lambda list");
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (!(lambdas[i] < lambdas[i - 1]))
            throw std::invalid_argument("slow_decay_experiment: lambdas must be decreasing");
    if (!(T > 0.0)) throw std::invalid_argument("slow_decay_experiment: T must be positive");

    SimConfig run = config;
    run.t_end = T;
    run.record_times = {T};

    std::vector<SlowDecayPoint> out;
    out.reserve(lambdas.size());
    for (double lambda : lambdas) {
        SpectralField data = lambda_rescale(theta0, lambda);
        const double norm0 = l2_norm_spectral(data);
        Trajectory traj = simulate(data, run);
        const double normT = l2_norm_spectral(traj.samples.back());
        out.push_back({lambda, normT / norm0});
    }
    return out;
}

}  // namespace sqg

#include "sqg/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sqg/fft.hpp"

namespace sqg {

double hermitian_defect(const SpectralField& f) {
    const int n = f.grid.n_points;
    double worst = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        const int jx = (n - ix) % n;
        for (int iy = 0; iy < n; ++iy) {
            const int jy = (n - iy) % n;
            const complex d = f.at(jx, jy) - std::conj(f.at(ix, iy));
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

bool all_finite(const SpectralField& f) {
    for (const complex& c : f.coeff)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

SpectralField forward_transform(std::span<const double> physical_values, const GridSpec& grid) {
    if (physical_values.size() != grid.size())
        throw std::invalid_argument("forward_transform: expected " + std::to_string(grid.size()) +
                                    " samples, got " + std::to_string(physical_values.size()));
    std::vector<complex> buf(grid.size());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = complex(physical_values[i], 0.0);
    SpectralField out(grid);
    Fft2D::get(grid.n_points).forward(buf.data(), out.coeff.data());
    return out;
}

std::vector<double> inverse_transform(const SpectralField& field) {
    std::vector<complex> buf(field.grid.size());
    Fft2D::get(field.grid.n_points).inverse(field.coeff.data(), buf.data());
    std::vector<double> out(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
    return out;
}

std::vector<double> fractional_symbol(double s, const GridSpec& grid) {
    if (s < 0.0) throw std::invalid_argument("fractional_symbol: s must be >= 0");
    const int n = grid.n_points;
    std::vector<double> mult(grid.size());
    for (int ix = 0; ix < n; ++ix) {
        const double kx = grid.wavenumber(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = grid.wavenumber(iy);
            const double mag = std::hypot(kx, ky);
            double value;
            if (mag == 0.0)
                value = (s == 0.0) ? 1.0 : 0.0;
            else
                value = std::pow(mag, s);
            mult[static_cast<std::size_t>(ix) * n + iy] = value;
        }
    }
    return mult;
}

VelocityField riesz_velocity(const SpectralField& theta) {
    const GridSpec& grid = theta.grid;
    const int n = grid.n_points;
    VelocityField u{SpectralField(grid), SpectralField(grid)};
    for (int ix = 0; ix < n; ++ix) {
        const double kx = grid.wavenumber(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = grid.wavenumber(iy);
            const double mag = std::hypot(kx, ky);
            if (mag == 0.0) continue;
            const complex th = theta.at(ix, iy);
            // u1 = i xi2 theta/|xi|, u2 = -i xi1 theta/|xi|
            u.u1.at(ix, iy) = complex(0.0, ky / mag) * th;
            u.u2.at(ix, iy) = complex(0.0, -kx / mag) * th;
        }
    }
    return u;
}

void dealias_inplace(SpectralField& field) {
    const int n = field.grid.n_points;
    const int limit = field.grid.dealias_limit();
    for (int ix = 0; ix < n; ++ix) {
        const bool kill_x = std::abs(field.grid.mode_index(ix)) > limit;
        for (int iy = 0; iy < n; ++iy) {
            if (kill_x || std::abs(field.grid.mode_index(iy)) > limit)
                field.at(ix, iy) = complex(0.0, 0.0);
        }
    }
}

SpectralField nonlinear_term(const SpectralField& theta, Dealias rule) {
    const GridSpec& grid = theta.grid;
    const int n = grid.n_points;
    const Fft2D& fft = Fft2D::get(n);

    VelocityField u = riesz_velocity(theta);

    std::vector<complex> theta_phys(grid.size()), u1_phys(grid.size()), u2_phys(grid.size());
    fft.inverse(theta.coeff.data(), theta_phys.data());
    fft.inverse(u.u1.coeff.data(), u1_phys.data());
    fft.inverse(u.u2.coeff.data(), u2_phys.data());

    // Pointwise fluxes u theta; imaginary parts are roundoff and dropped.
    std::vector<complex> w1(grid.size()), w2(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double th = theta_phys[i].real();
        w1[i] = complex(u1_phys[i].real() * th, 0.0);
        w2[i] = complex(u2_phys[i].real() * th, 0.0);
    }

    SpectralField w1_hat(grid), w2_hat(grid);
    fft.forward(w1.data(), w1_hat.coeff.data());
    fft.forward(w2.data(), w2_hat.coeff.data());

    SpectralField out(grid);
    for (int ix = 0; ix < n; ++ix) {
        const double kx = grid.wavenumber(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = grid.wavenumber(iy);
            out.at(ix, iy) = complex(0.0, 1.0) * (kx * w1_hat.at(ix, iy) + ky * w2_hat.at(ix, iy));
        }
    }
    if (rule == Dealias::two_thirds) dealias_inplace(out);
    return out;
}

double lp_norm(std::span<const double> physical_values, const GridSpec& grid, double p) {
    if (physical_values.size() != grid.size())
        throw std::invalid_argument("lp_norm: sample count does not match grid");
    if (std::isinf(p)) {
        double mx = 0.0;
        for (double v : physical_values) mx = std::max(mx, std::abs(v));
        return mx;
    }
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
    const double cell = grid.grid_spacing() * grid.grid_spacing();
    double total = 0.0;
    for (double v : physical_values) total += std::pow(std::abs(v), p);
    return std::pow(cell * total, 1.0 / p);
}

double lp_norm(const SpectralField& theta, double p) {
    std::vector<double> phys = inverse_transform(theta);
    return lp_norm(phys, theta.grid, p);
}

double l2_norm_spectral(const SpectralField& field) {
    double sum = 0.0;
    for (const complex& c : field.coeff) sum += std::norm(c);
    return field.grid.box_length * std::sqrt(sum);
}

double dissipation_norm_sq(const SpectralField& field, double alpha) {
    const GridSpec& grid = field.grid;
    const int n = grid.n_points;
    double sum = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx = grid.wavenumber(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = grid.wavenumber(iy);
            const double mag2 = kx * kx + ky * ky;
            if (mag2 == 0.0) continue;
            sum += std::pow(mag2, alpha) * std::norm(field.at(ix, iy));
        }
    }
    return grid.box_length * grid.box_length * sum;
}

double inner_product(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("inner_product: grid mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.coeff.size(); ++i)
        sum += a.coeff[i].real() * b.coeff[i].real() + a.coeff[i].imag() * b.coeff[i].imag();
    return a.grid.box_length * a.grid.box_length * sum;
}

std::array<SpectralField, 2> gradient(const SpectralField& theta) {
    const GridSpec& grid = theta.grid;
    const int n = grid.n_points;
    std::array<SpectralField, 2> g{SpectralField(grid), SpectralField(grid)};
    for (int ix = 0; ix < n; ++ix) {
        const double kx = grid.wavenumber(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = grid.wavenumber(iy);
            const complex th = theta.at(ix, iy);
            g[0].at(ix, iy) = complex(0.0, kx) * th;
            g[1].at(ix, iy) = complex(0.0, ky) * th;
        }
    }
    return g;
}

double gradient_lq_norm(const SpectralField& theta, double q) {
    auto g = gradient(theta);
    std::vector<double> g1 = inverse_transform(g[0]);
    std::vector<double> g2 = inverse_transform(g[1]);
    std::vector<double> mag(g1.size());
    for (std::size_t i = 0; i < g1.size(); ++i) mag[i] = std::hypot(g1[i], g2[i]);
    return lp_norm(mag, theta.grid, q);
}

double divergence_defect(const VelocityField& u) {
    const GridSpec& grid = u.u1.grid;
    const int n = grid.n_points;
    double worst = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx = grid.wavenumber(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = grid.wavenumber(iy);
            const complex div = kx * u.u1.at(ix, iy) + ky * u.u2.at(ix, iy);
            worst = std::max(worst, std::abs(div));
        }
    }
    return worst;
}

}  // namespace sqg

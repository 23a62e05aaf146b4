#pragma once

#include <array>
#include <span>
#include <vector>

#include "sqg/spectral_field.hpp"

namespace sqg {

enum class Dealias { two_thirds, none };

/// Analyze real grid samples (row-major, size n^2) into modal coefficients.
/// Throws on dimension mismatch.
SpectralField forward_transform(std::span<const double> physical_values, const GridSpec& grid);

/// Synthesize grid samples from modal coefficients (real part; the imaginary
/// part is roundoff for Hermitian-symmetric input).
std::vector<double> inverse_transform(const SpectralField& field);

/// Multiplier of Lambda^s = (-Delta)^{s/2}: |xi|^s per mode, with the zero
/// mode set to 0 for s > 0 and 1 for s = 0. Requires s >= 0.
std::vector<double> fractional_symbol(double s, const GridSpec& grid);

/// Velocity u = (-d2 psi, d1 psi) with Lambda psi = -theta, i.e.
/// u1 = i xi2 theta / |xi|, u2 = -i xi1 theta / |xi|, u(0) = 0.
VelocityField riesz_velocity(const SpectralField& theta);

/// Divergence-form nonlinearity div(u theta), computed pseudo-spectrally
/// and masked by the 2/3 rule when requested.
SpectralField nonlinear_term(const SpectralField& theta, Dealias rule = Dealias::two_thirds);

/// Grid quadrature of (integral |theta|^p dx)^{1/p}; p = infinity returns the
/// grid maximum of |theta|. Rejects p < 1.
double lp_norm(const SpectralField& theta, double p);
double lp_norm(std::span<const double> physical_values, const GridSpec& grid, double p);

/// Zero all modes with |k_i| > n/3 on either axis.
void dealias_inplace(SpectralField& field);

/// Parseval-side L2 norm, L * sqrt(sum |c_k|^2).
double l2_norm_spectral(const SpectralField& field);

/// ||Lambda^alpha theta||_{L2}^2 = L^2 sum |xi|^{2 alpha} |c_k|^2.
double dissipation_norm_sq(const SpectralField& field, double alpha);

/// L2 inner product L^2 Re sum a_k conj(b_k).
double inner_product(const SpectralField& a, const SpectralField& b);

/// Spectral gradient (i xi1 theta, i xi2 theta).
std::array<SpectralField, 2> gradient(const SpectralField& theta);

/// L^q norm of the pointwise gradient magnitude |grad theta|.
double gradient_lq_norm(const SpectralField& theta, double q);

/// max over modes of |xi . u(xi)|; zero for an exactly divergence-free field.
double divergence_defect(const VelocityField& u);

}  // namespace sqg

#pragma once

#include <complex>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

using complex = std::complex<double>;

/// Modal coefficients of a real scalar field on a GridSpec lattice,
/// stored row-major as coeff[ix*n + iy] for mode (k(ix), k(iy)).
/// Real fields satisfy coeff(-k) = conj(coeff(k)).
struct SpectralField {
    GridSpec grid;
    std::vector<complex> coeff;

    explicit SpectralField(const GridSpec& g) : grid(g), coeff(g.size(), complex(0.0, 0.0)) {}

    complex& at(int ix, int iy) { return coeff[static_cast<std::size_t>(ix) * grid.n_points + iy]; }
    const complex& at(int ix, int iy) const {
        return coeff[static_cast<std::size_t>(ix) * grid.n_points + iy];
    }

    /// Coefficient addressed by integer mode numbers (may be negative).
    complex& mode(int kx, int ky) { return at(grid.storage_index(kx), grid.storage_index(ky)); }
    const complex& mode(int kx, int ky) const {
        return at(grid.storage_index(kx), grid.storage_index(ky));
    }
};

/// Spectrally divergence-free velocity recovered from the stream function.
struct VelocityField {
    SpectralField u1;
    SpectralField u2;
};

/// Largest deviation from coeff(-k) = conj(coeff(k)) over all modes.
double hermitian_defect(const SpectralField& f);

/// True when every coefficient is finite.
bool all_finite(const SpectralField& f);

}  // namespace sqg

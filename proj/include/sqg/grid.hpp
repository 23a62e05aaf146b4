#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace sqg {

/// Uniform discretization of the periodic box [0,L)^2.
///
/// Wavenumbers live on the lattice xi_k = (2*pi/L)*k with integer
/// k in [-n/2, n/2); storage follows the usual FFT layout where the
/// index i maps to k = i for i < n/2 and k = i - n otherwise.
struct GridSpec {
    int n_points;
    double box_length;

    GridSpec(int n, double length) : n_points(n), box_length(length) {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("GridSpec: n_points must be even and >= 8, got " +
                                        std::to_string(n));
        if (!(length > 0.0) || !std::isfinite(length))
            throw std::invalid_argument("GridSpec: box_length must be positive and finite");
    }

    std::size_t size() const { return static_cast<std::size_t>(n_points) * n_points; }

    double grid_spacing() const { return box_length / n_points; }
    double mode_spacing() const { return 2.0 * M_PI / box_length; }

    /// Integer mode number k in [-n/2, n/2) for storage index i in [0, n).
    int mode_index(int i) const { return i < n_points / 2 ? i : i - n_points; }

    /// Storage index for integer mode number k (k may be negative).
    int storage_index(int k) const { return k >= 0 ? k : k + n_points; }

    double wavenumber(int i) const { return mode_spacing() * mode_index(i); }

    /// Modes with |k_i| > n/3 on either axis are zeroed when dealiasing.
    int dealias_limit() const { return n_points / 3; }

    bool operator==(const GridSpec& other) const = default;
};

}  // namespace sqg

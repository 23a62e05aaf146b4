#pragma once

#include <complex>

namespace sqg {

/// Shared FFTW engine for n x n complex transforms.
///
/// Plans are created once per grid size under a planner lock; execution
/// uses FFTW's new-array interface with unaligned-tolerant plans, so
/// distinct fields may be transformed concurrently.
class Fft2D {
public:
    static const Fft2D& get(int n);

    /// DFT with e^{-i xi x} kernel, scaled by 1/n^2 so that a constant
    /// field c has coefficient c at the zero mode.
    void forward(const std::complex<double>* phys, std::complex<double>* spec) const;

    /// Unscaled inverse, f(x) = sum_k c_k e^{+i xi_k x}.
    void inverse(const std::complex<double>* spec, std::complex<double>* phys) const;

    Fft2D(const Fft2D&) = delete;
    Fft2D& operator=(const Fft2D&) = delete;

private:
    explicit Fft2D(int n);
    ~Fft2D();

    int n_;
    void* fwd_plan_;
    void* inv_plan_;
};

}  // namespace sqg

#include "sqg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace sqg {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Fft2D::Fft2D(int n) : n_(n) {
    std::vector<std::complex<double>> scratch_a(static_cast<std::size_t>(n) * n);
    std::vector<std::complex<double>> scratch_b(scratch_a.size());
    auto* a = reinterpret_cast<fftw_complex*>(scratch_a.data());
    auto* b = reinterpret_cast<fftw_complex*>(scratch_b.data());
    // FFTW_UNALIGNED keeps the plans valid for any caller buffer.
    fwd_plan_ = fftw_plan_dft_2d(n, n, a, b, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    inv_plan_ = fftw_plan_dft_2d(n, n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Fft2D::~Fft2D() {
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inv_plan_));
}

const Fft2D& Fft2D::get(int n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    // Engines live for the whole process; plans stay valid for every caller.
    static std::map<int, Fft2D*>& registry = *new std::map<int, Fft2D*>();
    auto it = registry.find(n);
    if (it == registry.end()) it = registry.emplace(n, new Fft2D(n)).first;
    return *it->second;
}

void Fft2D::forward(const std::complex<double>* phys, std::complex<double>* spec) const {
    auto* in = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(phys));
    auto* out = reinterpret_cast<fftw_complex*>(spec);
    fftw_execute_dft(static_cast<fftw_plan>(fwd_plan_), in, out);
    const double scale = 1.0 / (static_cast<double>(n_) * n_);
    const std::size_t total = static_cast<std::size_t>(n_) * n_;
    for (std::size_t i = 0; i < total; ++i) spec[i] *= scale;
}

void Fft2D::inverse(const std::complex<double>* spec, std::complex<double>* phys) const {
    auto* in = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(spec));
    auto* out = reinterpret_cast<fftw_complex*>(phys);
    fftw_execute_dft(static_cast<fftw_plan>(inv_plan_), in, out);
}

}  // namespace sqg

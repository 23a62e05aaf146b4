#pragma once

#include <string>
#include <vector>

#include "sqg/spectral_field.hpp"

namespace sqg {

/// Measured kernel-norm scalings against the predicted power law.
/// measured_norms[i] corresponds to times[i]; max_ratio is the largest of
/// measured(t) / (measured(t0) * (t/t0)^predicted) over the sweep.
struct KernelProbeReport {
    double alpha = 0.0;
    std::string probe_id;
    std::vector<double> times;
    std::vector<double> measured_norms;
    double predicted_exponent = 0.0;
    double fitted_exponent = 0.0;
    double max_ratio = 1.0;
};

/// Fractional heat kernel on the plane,
/// K_a(x,t) = (1/2pi) int_0^inf e^{-r^{2a} t} J0(r |x|) r dr.
/// Adaptive quadrature with panel boundaries at J0 zeros once the phase
/// r |x| becomes large; absolute tolerance 1e-10. Requires t > 0.
double kernel_eval(double x_radius, double t, double alpha);

/// 2 pi int_0^inf K_a(r,t) r dr, quadratured to a large self-similar radius
/// with an algebraic far-field tail estimate; equals 1 up to ~1e-7.
double kernel_mass(double t, double alpha);

struct MultiIndex {
    int i1 = 0;
    int i2 = 0;
    int order() const { return i1 + i2; }
};

/// L^p norm scaling of x^gamma D_t^j D^beta K_a(t) versus the predicted
/// exponent (|gamma|-|beta|)/(2a) - j - (p-1)/(p a). Supports |beta| <= 1;
/// requires |gamma| < |beta| + 2a max(j,1) and a >= 2-decade time sweep.
KernelProbeReport kernel_norm_scaling_probe(MultiIndex gamma, MultiIndex beta, int j, double p,
                                            double alpha, const std::vector<double>& times);

enum class RadialTestKind { gaussian, exponential };

/// Radial profile with closed-form Fourier transform and L^p norms:
/// gaussian: e^{-r^2/(2 scale^2)}, exponential: e^{-r/scale}.
struct RadialTestFunction {
    RadialTestKind kind = RadialTestKind::gaussian;
    double scale = 1.0;
};

double radial_test_lp_norm(const RadialTestFunction& f, double p);

/// ||K_a(t) f||_{L^q} by Fourier-side multiplication and radial quadrature.
double smoothing_norm(const RadialTestFunction& f, double t, double q, double alpha);

/// Per time, the sup over test functions of
/// ||K_a(t) f||_{L^q} t^{(1/a)(1/p - 1/q)} / ||f||_{L^p}; stored in
/// measured_norms with predicted_exponent 0 (the weighted ratio is flat).
KernelProbeReport smoothing_estimate_probe(double p, double q, double alpha,
                                           const std::vector<RadialTestFunction>& test_functions,
                                           const std::vector<double>& times);

/// Grid measurement of the Holder/Riesz product bound
/// ||u . grad theta||_{L^{2/(mu+nu)}} / (||theta||_{L^{2/mu}} ||grad theta||_{L^{2/nu}}).
/// Requires eta <= mu + nu < 2 and 2/eta, 2/mu, 2/nu >= 1. Zero field -> 0.
double bilinear_estimate_probe(double eta, double mu, double nu, double alpha,
                               const SpectralField& theta);

}  // namespace sqg

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqg/spectral_field.hpp"
#include "sqg/spectral_ops.hpp"

namespace sqg {

enum class Integrator { ETD1, ETD2 };

/// Physical and numerical parameters for one run of the dissipative
/// quasi-geostrophic equation theta_t + div(u theta) + Lambda^{2 alpha} theta = 0.
struct SimConfig {
    double alpha = 0.75;  // supercritical range (1/2, 1]
    double dt = 1e-3;
    double t_end = 1.0;
    Integrator integrator = Integrator::ETD2;
    std::vector<double> record_times;  // strictly increasing, within [0, t_end]
    Dealias dealias = Dealias::two_thirds;
    bool include_nonlinear = true;

    void validate() const;

    /// m = 2/(2 alpha - 1), the critical Lebesgue exponent attached to alpha.
    double critical_m() const { return 2.0 / (2.0 * alpha - 1.0); }
};

/// Per-step energy bookkeeping accumulated while stepping.
struct EnergyLedger {
    double initial_energy_sq = 0.0;  // ||theta(0)||_{L2}^2 after band projection
    double final_energy_sq = 0.0;
    double dissipation_cum = 0.0;       // trapezoid over steps of 2 ||Lambda^a theta||^2
    double dissipation_cum_left = 0.0;  // left-endpoint sum, 2 dt ||Lambda^a theta(t_k)||^2
    double max_l2_sq_step_increase = 0.0;  // most positive per-step energy change
    long l2_increase_steps = 0;            // steps where the L2 energy grew

    /// |E(0) - E(T) - cumulative dissipation| / E(0).
    double balance_residual() const {
        if (initial_energy_sq == 0.0) return 0.0;
        return std::abs(initial_energy_sq - final_energy_sq - dissipation_cum) /
               initial_energy_sq;
    }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> samples;
    SimConfig config;
    EnergyLedger energy;
};

/// Thrown when a step produces non-finite coefficients.
struct InstabilityError : std::runtime_error {
    explicit InstabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact Fourier-side action of the fractional heat semigroup:
/// coefficients scaled by exp(-|xi|^{2 alpha} dt). Rejects dt < 0.
SpectralField linear_propagate(const SpectralField& theta, double alpha, double dt);

/// One explicit exponential-integrator step of length config.dt.
/// ETD1: theta+ = e^{z} theta + dt phi1(z) N(theta), z = -|xi|^{2a} dt,
/// N = -div(u theta); ETD2 adds the standard predictor-corrector with phi2.
SpectralField step(const SpectralField& theta, const SimConfig& config);

/// Advance from theta0 and sample at config.record_times. The initial field
/// is projected onto the dealiased band once up front.
Trajectory simulate(const SpectralField& theta0, const SimConfig& config);

/// Per-sample norms needed by the maximum-principle monitor.
struct NormSeries {
    std::vector<double> times;
    std::vector<double> l2, l4, linf;
    std::vector<double> dissipation_cum;  // trapezoidal sum of 2 ||Lambda^a theta||^2
};

NormSeries norm_series(const Trajectory& traj);

/// True when each requested norm is non-increasing along the samples within
/// the relative slack.
bool max_principle_holds(const NormSeries& ns, double rel_slack);

/// Time-weighted sup norms of one Picard iterate (Kato iteration bookkeeping).
struct KatoIterateRecord {
    int n = 0;
    double K_n = 0.0;   // sup_t t^{(1/a)(1/m-1/q)} ||theta_n(t)||_{L^q}
    double Kp_n = 0.0;  // sup_t t^{1/(2a)+(1/a)(1/m-1/q)} ||grad theta_n(t)||_{L^q}
    double q = 2.0;
    double sup_l2_diff_prev = 0.0;  // sup_t ||theta_n - theta_{n-1}||_{L2} (0 for n=1)
};

struct PicardResult {
    std::vector<Trajectory> iterates;
    std::vector<KatoIterateRecord> records;
};

/// Successive approximations of the mild form:
///   theta_1(t) = K_a(t) theta0,
///   theta_{n+1}(t) = K_a(t) theta0 - int_0^t K_a(t-s) div(u_n theta_n)(s) ds.
/// The Duhamel integral is quadratured on the sample grid with the exact
/// propagator between nodes (left endpoint on the final panel). Sup norms are
/// taken over sample times t >= 10*config.dt. Requires n_iters >= 1 and
/// q >= m. Reports divergence (K_n growing across 3 consecutive iterates).
PicardResult picard_iterate(const SpectralField& theta0, const SimConfig& config, int n_iters,
                            double q);

/// Scalar recursion K_{j+1} = K1 + c K_j^2 (worst case K_j = K'_j); true when
/// every iterate through n stays <= 1/(2c). Guaranteed true for K1 < 1/(4c).
bool kato_recursion_check(double K1, double c, int n);

}  // namespace sqg

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracle_utils.hpp"
#include "sqg/kernels.hpp"

using namespace sqg;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

double gaussian_kernel(double r, double t) { return std::exp(-r * r / (4.0 * t)) / (4.0 * M_PI * t); }

std::vector<double> log_times(double lo, double hi, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = lo * std::pow(hi / lo, i / static_cast<double>(n - 1));
    return t;
}
}  // namespace

TEST_CASE("kernel_eval matches the Gaussian closed form at alpha = 1") {
    CHECK(kernel_eval(0.0, 1.0, 1.0) == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-10));
    CHECK(kernel_eval(2.0, 1.0, 1.0) ==
          doctest::Approx(std::exp(-1.0) / (4.0 * M_PI)).epsilon(1e-10));
    for (double r : {0.3, 1.7, 5.0, 12.0}) {
        for (double t : {0.2, 1.0, 7.0}) {
            CHECK(kernel_eval(r, t, 1.0) == doctest::Approx(gaussian_kernel(r, t)).epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS(kernel_eval(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(kernel_eval(1.0, -1.0, 0.75), std::invalid_argument);
}

TEST_CASE("kernel_eval center value matches the Gamma-integral oracle") {
    // (1/2pi) int e^{-r^{1.5}} r dr = (2/3) Gamma(4/3) / (2 pi), frozen from
    // the substitution u = r^{3/2}.
    CHECK(kernel_eval(0.0, 1.0, 0.75) == doctest::Approx(0.0947480688973549).epsilon(1e-10));
    // General center value t^{-1/a} Gamma(1/a) / (4 pi a).
    const double alpha = 0.6;
    const double expected = std::pow(2.5, -1.0 / alpha) * std::tgamma(1.0 / alpha) /
                            (4.0 * M_PI * alpha);
    CHECK(kernel_eval(0.0, 2.5, alpha) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("kernel self-similarity K(x,t) = t^{-1/a} K(x t^{-1/(2a)}, 1)") {
    for (double alpha : {0.6, 0.75, 1.0}) {
        for (double t : {0.5, 3.0, 20.0}) {
            for (double y : {0.0, 0.8, 2.5, 6.0}) {
                const double x = y * std::pow(t, 1.0 / (2.0 * alpha));
                const double lhs = kernel_eval(x, t, alpha);
                const double rhs = std::pow(t, -1.0 / alpha) * kernel_eval(y, 1.0, alpha);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("kernel mass is 1 for every probed (t, alpha)") {
    for (double alpha : {0.6, 0.75, 1.0}) {
        for (double t : {0.7, 1.9}) {
            CHECK(kernel_mass(t, alpha) == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("Lemma-2.3 norm scalings: L1 flat, L2 and gradient-L1 rates") {
    auto times = log_times(0.1, 10.0, 7);

    SUBCASE("L1 norm of the kernel is constant in t") {
        auto rep = kernel_norm_scaling_probe({}, {}, 0, 1.0, 0.75, times);
        CHECK(rep.predicted_exponent == doctest::Approx(0.0));
        CHECK(std::abs(rep.fitted_exponent) < 0.02);
    }
    SUBCASE("L2 norm decays like t^{-1/(2a)}") {
        const double alpha = 0.8;
        auto rep = kernel_norm_scaling_probe({}, {}, 0, 2.0, alpha, times);
        CHECK(rep.predicted_exponent == doctest::Approx(-1.0 / (2.0 * alpha)));
        CHECK(std::abs(rep.fitted_exponent - rep.predicted_exponent) < 0.02);
    }
    SUBCASE("gradient L1 norm at alpha = 1 matches the Gaussian oracle") {
        auto rep = kernel_norm_scaling_probe({}, {1, 0}, 0, 1.0, 1.0, times);
        CHECK(rep.predicted_exponent == doctest::Approx(-0.5));
        CHECK(std::abs(rep.fitted_exponent + 0.5) < 0.02);
        // ||d1 K(t)||_{L1} = 1/sqrt(pi t): radial part sqrt(pi/t)/(2 pi) times
        // the angular integral of |cos|.
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double expected = 1.0 / std::sqrt(M_PI * times[i]);
            CHECK(rep.measured_norms[i] == doctest::Approx(expected).epsilon(5e-3));
        }
    }
    SUBCASE("hypothesis violation is rejected") {
        CHECK_THROWS_AS(kernel_norm_scaling_probe({2, 0}, {}, 0, 1.0, 0.75, times),
                        std::invalid_argument);
        CHECK_THROWS_AS(kernel_norm_scaling_probe({}, {}, 0, 1.0, 0.75, {1.0, 2.0, 4.0, 8.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("Prop-2.1 smoothing ratios") {
    std::vector<RadialTestFunction> fs = {{RadialTestKind::gaussian, 1.0},
                                          {RadialTestKind::gaussian, 2.0},
                                          {RadialTestKind::exponential, 1.0}};
    auto times = log_times(1.0, 1000.0, 10);

    SUBCASE("p = q is a contraction with ratio <= 1") {
        auto rep = smoothing_estimate_probe(2.0, 2.0, 1.0, fs, times);
        for (double v : rep.measured_norms) CHECK(v <= 1.0 + 1e-12);
    }
    SUBCASE("(1,2) ratio converges to the Gaussian self-similar constant") {
        auto rep = smoothing_estimate_probe(1.0, 2.0, 1.0, fs, times);
        // t^{1/2} ||K(t) f||_2 / ||f||_1 -> ||K(1)||_2 = (8 pi)^{-1/2}.
        CHECK(rep.measured_norms.back() ==
              doctest::Approx(1.0 / std::sqrt(8.0 * M_PI)).epsilon(5e-3));
    }
    SUBCASE("(1,inf) raw norm decays with exponent -(1/a)") {
        const double alpha = 0.75;
        RadialTestFunction f{RadialTestKind::gaussian, 1.0};
        auto ts = log_times(30.0, 3000.0, 8);
        std::vector<double> norms;
        for (double t : ts) norms.push_back(smoothing_norm(f, t, kInf, alpha));
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            sx += std::log(ts[i]);
            sy += std::log(norms[i]);
            sxx += std::log(ts[i]) * std::log(ts[i]);
            sxy += std::log(ts[i]) * std::log(norms[i]);
        }
        const double slope = (ts.size() * sxy - sx * sy) / (ts.size() * sxx - sx * sx);
        CHECK(std::abs(slope + 1.0 / alpha * (1.0 - 0.0)) < 0.02);
    }
    SUBCASE("p > q rejected") {
        CHECK_THROWS_AS(smoothing_estimate_probe(2.0, 1.0, 1.0, fs, times),
                        std::invalid_argument);
    }
}

TEST_CASE("bilinear Holder/Riesz ratio on grid fields") {
    GridSpec grid(64, 2.0 * M_PI);
    SpectralField zero(grid);
    CHECK(bilinear_estimate_probe(1.0, 0.5, 0.5, 1.0, zero) == 0.0);

    SpectralField theta = test::random_smooth(grid, 21, 3.0);
    const double r = bilinear_estimate_probe(1.0, 0.5, 0.5, 1.0, theta);
    CHECK(std::isfinite(r));
    CHECK(r > 0.0);
    CHECK(r < 10.0);

    // Refinement stability: doubling n changes the ratio < 5%.
    GridSpec fine(128, 2.0 * M_PI);
    SpectralField theta_fine(fine);
    for (int ix = -20; ix <= 20; ++ix)
        for (int iy = -20; iy <= 20; ++iy)
            theta_fine.mode(ix, iy) = theta.mode(ix, iy);
    const double r2 = bilinear_estimate_probe(1.0, 0.5, 0.5, 1.0, theta_fine);
    CHECK(std::abs(r2 - r) / r < 0.05);

    CHECK_THROWS_AS(bilinear_estimate_probe(1.0, 1.2, 0.9, 1.0, theta), std::invalid_argument);
}

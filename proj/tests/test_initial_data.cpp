#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "sqg/evolution.hpp"
#include "sqg/initial_data.hpp"
#include "sqg/spectral_ops.hpp"

using namespace sqg;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("single mode generation excites exactly one conjugate pair") {
    GridSpec grid(32, 2.0 * M_PI);
    ProfileSpec p;
    p.kind = ProfileKind::single_mode;
    p.amplitude = 1.0;
    p.length_scale = 2.0 * M_PI;  // mode k = 1
    SpectralField f = generate(p, grid);
    int nonzero = 0;
    for (const complex& c : f.coeff)
        if (std::abs(c) > 0.0) ++nonzero;
    CHECK(nonzero == 2);
    CHECK(f.mode(1, 0) == complex(0.5, 0.0));
    CHECK(f.mode(-1, 0) == complex(0.5, 0.0));

    p.length_scale = 2.1;  // not a box harmonic
    CHECK_THROWS_AS(generate(p, grid), std::invalid_argument);
}

TEST_CASE("gaussian profile has the closed-form L1 mass") {
    GridSpec grid(128, 2.0 * M_PI);
    ProfileSpec p;
    p.kind = ProfileKind::gaussian;
    p.amplitude = 1.0;
    p.length_scale = grid.box_length / 32.0;
    SpectralField f = generate(p, grid);
    const double l1 = lp_norm(f, 1.0);
    const double expected = 2.0 * M_PI * p.length_scale * p.length_scale;
    CHECK(l1 == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("support criterion is enforced") {
    GridSpec grid(32, 8.0);
    ProfileSpec p;
    p.kind = ProfileKind::gaussian;
    p.length_scale = 1.5;  // > L/8 = 1
    CHECK_THROWS_AS(generate(p, grid), std::invalid_argument);
}

TEST_CASE("seeded generation is bit-reproducible") {
    GridSpec grid(64, 16.0 * M_PI);
    ProfileSpec p;
    p.kind = ProfileKind::ring_spectrum_random;
    p.amplitude = 2.0;
    p.length_scale = grid.box_length / 10.0;
    p.seed = 777;
    SpectralField a = generate(p, grid);
    SpectralField b = generate(p, grid);
    REQUIRE(a.coeff.size() == b.coeff.size());
    for (std::size_t i = 0; i < a.coeff.size(); ++i) CHECK(a.coeff[i] == b.coeff[i]);
    CHECK(hermitian_defect(a) < 1e-13);
    CHECK(lp_norm(a, 2.0) == doctest::Approx(2.0).epsilon(1e-9));

    p.seed = 778;
    SpectralField c = generate(p, grid);
    CHECK(l2_norm_spectral(c) > 0.0);
    bool differs = false;
    for (std::size_t i = 0; i < a.coeff.size(); ++i)
        if (a.coeff[i] != c.coeff[i]) differs = true;
    CHECK(differs);
}

TEST_CASE("target norm rescaling") {
    GridSpec grid(64, 8.0 * M_PI);
    ProfileSpec p;
    p.kind = ProfileKind::gaussian;
    p.length_scale = M_PI / 2.0;
    p.target_norm = TargetNorm{10.0 / 3.0, 1e-3};
    SpectralField f = generate(p, grid);
    CHECK(lp_norm(f, 10.0 / 3.0) == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("lambda rescale: identity, norm invariance and scaling laws") {
    // n and ell sized so that even the 64th power of the bump is resolved.
    GridSpec grid(256, 2.0 * M_PI);
    ProfileSpec p;
    p.kind = ProfileKind::gaussian;
    p.amplitude = 1.0;
    p.length_scale = grid.box_length / 40.0;
    SpectralField theta0 = generate(p, grid);

    CHECK_THROWS_AS(lambda_rescale(theta0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lambda_rescale(theta0, 1.5), std::invalid_argument);

    SpectralField same = lambda_rescale(theta0, 1.0);
    for (std::size_t i = 0; i < same.coeff.size(); ++i) CHECK(same.coeff[i] == theta0.coeff[i]);

    const double l2_0 = lp_norm(theta0, 2.0);
    const double l1_0 = lp_norm(theta0, 1.0);
    const double l4_0 = lp_norm(theta0, 4.0);
    const double l64_0 = lp_norm(theta0, 64.0);
    const double linf_0 = lp_norm(theta0, kInf);

    for (double lambda : {0.5, 0.25}) {
        SpectralField r = lambda_rescale(theta0, lambda);
        CHECK(lp_norm(r, 2.0) == doctest::Approx(l2_0).epsilon(1e-4));
        CHECK(lp_norm(r, 1.0) ==
              doctest::Approx(std::pow(lambda, 1.0 - 2.0) * l1_0).epsilon(1e-3));
        CHECK(lp_norm(r, 4.0) ==
              doctest::Approx(std::pow(lambda, 1.0 - 0.5) * l4_0).epsilon(1e-3));
        CHECK(lp_norm(r, 64.0) ==
              doctest::Approx(std::pow(lambda, 1.0 - 2.0 / 64.0) * l64_0).epsilon(1e-3));
        CHECK(lp_norm(r, kInf) == doctest::Approx(lambda * linf_0).epsilon(1e-3));
        CHECK(hermitian_defect(r) < 1e-12);
    }
}

TEST_CASE("slow decay: single lambda baseline ratio lies in (0,1)") {
    GridSpec grid(64, 16.0 * M_PI);
    ProfileSpec p;
    p.kind = ProfileKind::gaussian;
    p.length_scale = grid.box_length / 16.0;
    SpectralField theta0 = generate(p, grid);

    SimConfig c;
    c.alpha = 0.75;
    c.dt = 2e-3;

    auto pts = slow_decay_experiment(theta0, {1.0}, 0.5, c);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].ratio > 0.0);
    CHECK(pts[0].ratio < 1.0);
}

TEST_CASE("slow decay: shrinking lambda closes the decay gap") {
    GridSpec grid(64, 32.0 * M_PI);
    ProfileSpec p;
    p.kind = ProfileKind::gaussian;
    p.length_scale = grid.box_length / 64.0;
    SpectralField theta0 = generate(p, grid);

    SimConfig c;
    c.alpha = 0.75;
    c.dt = 2e-3;

    auto pts = slow_decay_experiment(theta0, {1.0, 0.5, 0.25}, 0.5, c);
    REQUIRE(pts.size() == 3);
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].ratio > pts[i - 1].ratio - 1e-3);
    CHECK(1.0 - pts.back().ratio < 1.0 - pts.front().ratio);
}

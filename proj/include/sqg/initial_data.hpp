#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sqg/spectral_field.hpp"

namespace sqg {

enum class ProfileKind { gaussian, ring_spectrum_random, single_mode, algebraic_bump };

/// Rescale directive: after synthesis, scale the field so ||theta||_{L^p} = value.
struct TargetNorm {
    double p;
    double value;
};

/// Initial-data descriptor. length_scale is the profile width (for
/// single_mode, the wavelength L/k of the excited mode); seeded kinds are
/// bit-reproducible.
struct ProfileSpec {
    ProfileKind kind = ProfileKind::gaussian;
    double amplitude = 1.0;
    double length_scale = 1.0;
    std::uint64_t seed = 0;
    std::optional<TargetNorm> target_norm;
};

/// Sample the profile on the grid and analyze it. Profiles are centered at
/// the box center. Throws if length_scale exceeds box_length/8 (support
/// criterion) or the spec is otherwise invalid for the grid.
SpectralField generate(const ProfileSpec& spec, const GridSpec& grid);

/// The dilation family x -> lambda * theta(lambda x) (fixed point at the box
/// center), evaluated by band-limited interpolation: the truncated Fourier
/// series is sampled at the contracted points and re-analyzed. L2-invariant;
/// ||result||_{L^p} = lambda^{1-2/p} ||theta||_{L^p}. Requires 0 < lambda <= 1.
SpectralField lambda_rescale(const SpectralField& theta0, double lambda);

struct SlowDecayPoint {
    double lambda;
    double ratio;  // ||theta^lambda(T)||_{L2} / ||theta0^lambda||_{L2}
};

struct SimConfig;  // evolution.hpp

/// For each lambda, simulate from the rescaled data to time T and record the
/// L2 ratio. Theorem mechanism: the ratio approaches 1 as lambda -> 0.
std::vector<SlowDecayPoint> slow_decay_experiment(const SpectralField& theta0,
                                                  const std::vector<double>& lambdas, double T,
                                                  const SimConfig& config);

}  // namespace sqg

#pragma once

#include <array>
#include <cstdint>

namespace covertlab {

/// Deterministic stream of pseudo-random numbers backed by xoshiro256++,
/// seeded through splitmix64. The generator is fixed by name so that equal
/// seeds reproduce equal draws across runs and platforms. Instances are
/// single-owner; parallel work uses independently seeded streams.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform on (0, 1); safe as a log() argument.
    double uniform_open();

    bool bernoulli(double p);

    /// Standard normal via the Marsaglia polar method (spare deviate
    /// discarded, so draws map 1:1 onto calls).
    double normal();

    /// Exponential with the given rate, by inversion.
    double exponential(double rate);

    /// Gamma(shape, 1) via Marsaglia-Tsang; shapes below 1 are boosted.
    double gamma(double shape);

private:
    std::array<std::uint64_t, 4> state_;
};

}  // namespace covertlab

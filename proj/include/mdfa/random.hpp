#pragma once

#include <cstdint>

namespace mdfa {

/// SplitMix64 step; used to expand a 64-bit seed into generator state.
std::uint64_t splitmix64(std::uint64_t& state);

/// xoshiro256** seeded from four consecutive SplitMix64 outputs. Fixed
/// algorithm so that seeded instances are reproducible across implementations.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed);

    std::uint64_t next();

    /// Uniform integer in [0, bound) by rejection: draws below (2^64 - bound) mod bound
    /// are discarded, the rest are reduced mod bound. bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform integer in [low, high].
    std::int64_t between(std::int64_t low, std::int64_t high);

private:
    std::uint64_t s_[4];
};

}  // namespace mdfa

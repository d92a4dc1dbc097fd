#pragma once

#include <cstdint>

namespace cceq {

// SplitMix64 (Steele, Lea, Vigna): a 64-bit counter generator whose output is
// a strong bit-mix of state. Each (seed, cell, member) triple hashes to its
// own substream, so draws are independent of evaluation order and the whole
// simulation stays deterministic under any parallel schedule.
class SubstreamRng {
public:
    SubstreamRng(std::uint64_t seed, std::uint64_t cell, std::uint64_t member)
        : state_(mix(mix(seed + 0x9E3779B97F4A7C15ULL) ^
                     mix(cell + 0xBF58476D1CE4E5B9ULL) ^
                     mix(member + 0x94D049BB133111EBULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform draw strictly inside (0,1), 53-bit resolution.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

private:
    std::uint64_t state_;
};

/// Inverse standard normal CDF (Wichura's AS241 rational approximation,
/// accurate to roughly 1e-15 over (0,1)).
double normal_quantile(double u);

} // namespace cceq

#pragma once

#include <cstdint>

namespace mobjul {

/// SplitMix64 (Steele, Lea, Flood 2014), the generator behind
/// java.util.SplittableRandom. Counter-based: output n of a stream is the
/// finalizer applied to seed + (n+1) * GAMMA, so streams are seekable and
/// the sequence is identical on every platform. This algorithm identity is
/// part of the reproducibility contract: orbit dumps record the master seed
/// and can be regenerated bit-exactly anywhere.
///
/// Stream derivation rule: the stream with index s of master seed m is
/// seeded with mix64(m + (s + 1) * GAMMA). GAMMA is odd, so distinct
/// indices give distinct seeds, and mix64 is a bijection.
class SplitMix64 {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Seed of derived stream `index` of `master`.
    static std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
        return mix64(master + (index + 1) * kGamma);
    }

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace mobjul

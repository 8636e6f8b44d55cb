#pragma once

#include <cstdint>

namespace ri {

/// xoshiro256** with splitmix64 seeding. Small, fast, and reproducible across
/// platforms; `split` derives independent streams so parallel workers can
/// share one user-visible seed.
class Xoshiro256 {
  public:
    static constexpr const char* kName = "xoshiro256**";

    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : s_)
            word = splitmix64(x);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return double(next() >> 11) * 0x1.0p-53; }

    /// Derived stream k of the same seed; statistically independent of the
    /// parent and of other streams.
    static Xoshiro256 stream(std::uint64_t seed, std::uint64_t k) {
        std::uint64_t x = seed;
        std::uint64_t mixed = splitmix64(x) ^ (0x9E3779B97F4A7C15ull * (k + 1));
        return Xoshiro256(mixed);
    }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
};

} // namespace ri

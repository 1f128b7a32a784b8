#pragma once

// xoshiro256** seeded through SplitMix64 (Blackman & Vigna constants).
// Ensemble streams are derived from (seed, stream index) only, so any
// schedule of workers reproduces the same numbers.

#include <cstdint>

namespace shear {

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

class Xoshiro256ss {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256ss(std::uint64_t seed) noexcept {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    /// Independent stream for ensemble `index` under `seed`.
    static Xoshiro256ss stream(std::uint64_t seed, std::uint64_t index) noexcept {
        SplitMix64 sm(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
        sm.next();
        return Xoshiro256ss(sm.next());
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
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

    /// Uniform double in [0, 1).
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

/// Fair coin flips drawn 64 at a time.
class CoinStream {
public:
    explicit CoinStream(Xoshiro256ss rng) noexcept : rng_(rng) {}

    bool next() noexcept {
        if (left_ == 0) {
            bits_ = rng_();
            left_ = 64;
        }
        const bool b = bits_ & 1u;
        bits_ >>= 1;
        --left_;
        return b;
    }

private:
    Xoshiro256ss rng_;
    std::uint64_t bits_ = 0;
    int left_ = 0;
};

}  // namespace shear

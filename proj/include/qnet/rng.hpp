#pragma once

#include <cstdint>
#include <vector>

namespace qnet {

// Stafford mix13 finalizer (the splitmix64 output function). Bijective on u64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;     // 2^64 / phi, odd
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL; // distinct odd constant

// Seed schedule (documented in the README; stable across platforms):
//   realization r of a run:  mix64(seed + (r+1) * kGolden)
//   named substream k:       mix64(seed + (k+1) * kStreamSalt)
//   pair (i, j), i < j:      mix64(pair_seed + ((i<<32)|j) * kGolden)
constexpr std::uint64_t realization_seed(std::uint64_t config_seed, std::uint64_t r) noexcept {
    return mix64(config_seed + (r + 1) * kGolden);
}

constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix64(seed + (stream + 1) * kStreamSalt);
}

namespace stream {
constexpr std::uint64_t positions = 0;   // node placement
constexpr std::uint64_t pairs = 1;       // per-pair link decisions
constexpr std::uint64_t attachment = 2;  // BA preferential attachment
constexpr std::uint64_t removal = 3;     // failure/attack orderings
constexpr std::uint64_t pair_pick = 4;   // edge-cut attack target pairs
}  // namespace stream

// Top 52 bits -> [0, 1). Exact in double; identical scalar/SIMD conversion.
constexpr double u01(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 12) * 0x1.0p-52;
}

// Counter-based variate for the unordered pair (i, j), i < j. Stateless, so
// pair evaluations can run in any order or in parallel with identical output.
constexpr std::uint64_t pair_bits(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t j) noexcept {
    const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | j;
    return mix64(pair_seed + key * kGolden);
}

constexpr double pair_u01(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t j) noexcept {
    return u01(pair_bits(pair_seed, i, j));
}

// Sequential generator for the inherently ordered draws (positions, BA,
// removal permutations). std:: distributions are implementation-defined, so
// bounded draws and shuffles are done by hand to keep outputs portable.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        state_ += kGolden;
        return mix64(state_);
    }

    double next_double() noexcept { return u01(next_u64()); }

    // Unbiased draw from [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        const std::uint64_t lim = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= lim) return r % bound;
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& v) noexcept {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t k = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[k]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace qnet

#pragma once

// Seeded deterministic randomness. Experiments take an explicit 64-bit
// seed; trial loops are split into fixed-size blocks, each with its own
// substream, so aggregate counts do not depend on how many workers
// processed the blocks.

#include <cstdint>
#include <random>

namespace cwb {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // Substream k of a master seed; used by trial-block runners.
    static Rng substream(std::uint64_t seed, std::uint64_t k) {
        return Rng(splitmix64(seed ^ splitmix64(k + 1)));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_unit() < p; }

    std::uint64_t below(std::uint64_t n) {
        std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
        return d(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Fixed block size for trial splitting: results are byte-identical for
// any worker count because block -> substream is a pure function.
inline constexpr std::uint64_t kTrialBlock = 4096;

}  // namespace cwb

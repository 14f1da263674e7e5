#pragma once

#include <cstdint>
#include <random>

namespace smash {

// Seeded, portable random generator. Built on std::mt19937_64, whose output
// sequence is fully specified by the standard; symbol and double extraction
// below avoid std::uniform_*_distribution, whose results are
// implementation-defined. Identical seed gives identical output everywhere.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, n) via rejection sampling.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

// splitmix64 mix; used to derive independent sub-seeds for parallel lanes.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t lane) {
    return mix_seed(mix_seed(seed) ^ mix_seed(lane * 0xd1342543de82ef95ULL + 1));
}

}  // namespace smash

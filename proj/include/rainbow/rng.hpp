#pragma once

// Reproducible randomness.
//
// Every random draw in the library comes from a std::mt19937_64 engine whose
// seed is derived from (master seed, stream path) by folding the path through
// SplitMix64. A stream path is a short list of integers such as
// {tag, grid point, trial}. Two runs with the same master seed therefore see
// the same numbers for the same logical unit of work, regardless of how work
// is scheduled across threads.
//
// Integer and real draws are implemented here rather than through the
// <random> distributions, whose output is implementation-defined; golden
// fixtures must not depend on the standard library vendor.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rainbow {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream tags keep unrelated consumers of one master seed apart.
enum class StreamTag : std::uint64_t {
    Graph = 1,
    Coloring = 2,
    Sampling = 3,
};

constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t id : path) h = splitmix64(h ^ splitmix64(id + 0x632be59bd9b4e019ULL));
    return h;
}

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

inline Engine substream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    return Engine(derive_seed(master, path));
}

inline Engine substream(std::uint64_t master, StreamTag tag,
                        std::initializer_list<std::uint64_t> ids = {}) {
    std::uint64_t h = derive_seed(master, {static_cast<std::uint64_t>(tag)});
    for (std::uint64_t id : ids) h = splitmix64(h ^ splitmix64(id + 0x632be59bd9b4e019ULL));
    return Engine(h);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with rejection.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) {
    using u128 = unsigned __int128;
    std::uint64_t x = eng();
    u128 m = static_cast<u128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = eng();
            m = static_cast<u128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace rainbow

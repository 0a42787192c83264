#pragma once

#include <cstdint>
#include <random>

namespace ramsey {

/// Stages of a Monte-Carlo run. Each stage draws from its own stream so that
/// changing one stage (e.g. the noise level) leaves the others untouched.
enum class RngStage : std::uint64_t {
    atoms = 1,
    multinomial = 2,
    noise = 3,
    grid_point = 4,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the stream for (master seed, index, stage).
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index,
                                    RngStage stage) noexcept {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ index);
    return splitmix64(h ^ static_cast<std::uint64_t>(stage));
}

inline std::mt19937_64 stream(std::uint64_t master, std::uint64_t index, RngStage stage) {
    return std::mt19937_64(stream_seed(master, index, stage));
}

}  // namespace ramsey

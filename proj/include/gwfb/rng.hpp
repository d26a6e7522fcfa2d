#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gwfb {

// Every random stage (graph generation, test signals, noise, random
// partitioning) draws from its own stream derived from the single user seed,
// so individual stages are replayable independently of each other.
inline std::mt19937_64 seeded_stream(std::uint64_t seed, std::string_view stage) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (char c : stage) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return std::mt19937_64(h ^ (seed * 0x9e3779b97f4a7c15ull));
}

}  // namespace gwfb

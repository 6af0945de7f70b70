#pragma once

#include <cstdint>
#include <random>

namespace landscape {

// Generator contract: "mt19937_64/splitmix64-streams/v1".
// Every parallel unit of work (trial, weight draw, dataset replicate) owns its
// own engine seeded by stream_seed(master, index), so results are independent
// of execution order and thread count.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index * 0x9E3779B97F4A7C15ULL + 1));
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t index) {
    return std::mt19937_64(stream_seed(master, index));
}

inline const char* rng_version() { return "mt19937_64/splitmix64-streams/v1"; }

}  // namespace landscape

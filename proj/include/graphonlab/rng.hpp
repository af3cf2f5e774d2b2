#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace graphonlab {

// All randomness flows from one user seed through named substreams so that
// individual stages can be rerun in isolation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t stream_id(std::string_view name) {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::mt19937_64 substream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0) {
    std::uint64_t state = seed ^ stream_id(name);
    splitmix64(state);
    state += index * 0x9e3779b97f4a7c15ULL;
    std::seed_seq seq{static_cast<unsigned>(splitmix64(state)), static_cast<unsigned>(splitmix64(state)),
                      static_cast<unsigned>(splitmix64(state)), static_cast<unsigned>(splitmix64(state))};
    return std::mt19937_64(seq);
}

inline double uniform01(std::mt19937_64& gen) {
    return (gen() >> 11) * 0x1.0p-53;
}

}  // namespace graphonlab

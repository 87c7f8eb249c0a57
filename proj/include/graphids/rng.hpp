#pragma once

#include <cstdint>
#include <random>

namespace graphids {

// splitmix64 finalizer; the fixed 64-bit mix used for all seed derivation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Trial i of an experiment draws from seed mix64(master ^ i).
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return mix64(master ^ trial);
}

// Substream roles within one trial. Keeping these separate means one
// policy's sampling cannot perturb another's environment sequence.
enum class StreamRole : std::uint64_t {
    environment = 1, // theta draw
    policy = 2,      // action sampling
    feedback = 3,    // graph realization
    reward = 4,      // Bernoulli outcomes
    schedule = 5,    // per-trial feedback schedules
};

inline std::uint64_t substream_seed(std::uint64_t trial, StreamRole role) {
    return mix64(trial ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(role)));
}

inline std::mt19937_64 substream(std::uint64_t trial, StreamRole role) {
    return std::mt19937_64(substream_seed(trial, role));
}

} // namespace graphids

#pragma once

#include <cstdint>

namespace sal::harness {

/// One step of the splitmix64 generator applied to `x`.
std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based per-trial seed:
///   s = mix(mix(mix(master) + stream) + trial)
/// where mix is splitmix64. `stream` is the alpha* index, so every algorithm
/// sees the same seed for the same (alpha*, trial) and comparisons are paired.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t trial);

}  // namespace sal::harness

#pragma once

#include <cstdint>

namespace fptzone {

// Advances a splitmix64 state and returns the next output.
std::uint64_t splitmix64_next(std::uint64_t& state);

// Per-path generator: xoshiro256++ seeded from a dedicated splitmix64 block.
// Stream k consumes splitmix outputs 4k+1 .. 4k+4 of the master sequence, so
// streams never overlap and path i is reproducible from (seed, i) alone,
// independent of scheduling.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    // Strictly inside (0, 1): bin midpoints on a 2^53 lattice.
    double uniform01();

    // Standard normal via the inverse CDF; exactly one uniform per draw.
    double normal();

private:
    std::uint64_t s_[4];
};

}  // namespace fptzone

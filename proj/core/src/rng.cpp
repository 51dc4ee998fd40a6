#include "fptzone/rng.hpp"

#include "fptzone/special.hpp"

namespace fptzone {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += kGamma);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

PathRng::PathRng(std::uint64_t seed, std::uint64_t stream) {
    // jump the master splitmix sequence to this stream's private block
    std::uint64_t sm = seed + 4ULL * kGamma * stream;
    s_[0] = splitmix64_next(sm);
    s_[1] = splitmix64_next(sm);
    s_[2] = splitmix64_next(sm);
    s_[3] = splitmix64_next(sm);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // xoshiro forbids all-zero
}

std::uint64_t PathRng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double PathRng::uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double PathRng::normal() {
    return inverse_normal_cdf(uniform01());
}

}  // namespace fptzone

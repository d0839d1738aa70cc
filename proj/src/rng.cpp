#include "betaspec/rng.hpp"

namespace betaspec {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

// SplitMix64 finalizer (Steele, Lea & Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t splitmix_next(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    return mix64(x);
}

} // namespace

RngStream::RngStream(std::uint64_t seed) : key_(seed) {
    seed_state(seed);
}

void RngStream::seed_state(std::uint64_t key) {
    std::uint64_t sm = key;
    for (auto& s : state_) s = splitmix_next(sm);
}

RngStream RngStream::split(std::uint64_t index) const {
    std::uint64_t child = mix64(key_ + 0x9E3779B97F4A7C15ULL * (index + 1));
    child = mix64(child ^ 0x6A09E667F3BCC909ULL);
    return RngStream(child);
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform01() {
    // 53-bit mantissa, offset by half an ulp so 0 and 1 are excluded.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace betaspec

#pragma once

#include <cstdint>

namespace betaspec {

/// Seeded, splittable random stream.
///
/// The generator is xoshiro256++ (Blackman & Vigna 2019). Substreams are
/// derived from a 64-bit stream key, not from the generator state, so
/// split(i) yields the same substream no matter how many variates were
/// drawn from the parent. Streams are single-owner: hand out substreams
/// via split() before fanning work out to threads.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    /// Independent substream for the given index. Deterministic in
    /// (parent key, index); distinct indices give distinct keys.
    [[nodiscard]] RngStream split(std::uint64_t index) const;

    std::uint64_t next_u64();

    /// Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform01();

    [[nodiscard]] std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t state_[4];

    void seed_state(std::uint64_t key);
};

} // namespace betaspec

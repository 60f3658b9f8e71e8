#pragma once

#include <cstdint>
#include <random>

namespace subdiff {

// Deterministic, splittable pseudo-random stream. One stream per trajectory;
// the engine seed is a 64-bit hash of (master_seed, stream_index, substream),
// so the draw sequence is independent of scheduling and thread count.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_index,
                 std::uint64_t substream = 0);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    // Derived stream with its own independent state. Used e.g. to keep the
    // subordinator and the Gaussian draws of one trajectory independent.
    RandomStream substream(std::uint64_t tag) const;

    // Uniform on the open interval (0,1).
    double uniform();

    // Unit-rate exponential.
    double exponential();

    std::uint64_t next_u64() { return engine_(); }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::uint64_t substream_;
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to turn structured ids into well-mixed seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace subdiff

#include "subdiff/rng.hpp"

#include <cmath>

namespace subdiff {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t sub) {
    std::uint64_t s = mix64(master);
    s = mix64(s ^ mix64(stream + 0x632be59bd9b4e019ULL));
    s = mix64(s ^ mix64(sub + 0x9e6c63d0876a9a47ULL));
    return s;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index,
                           std::uint64_t substream)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      substream_(substream),
      engine_(derive_seed(master_seed, stream_index, substream)) {}

RandomStream RandomStream::substream(std::uint64_t tag) const {
    return RandomStream(master_seed_, stream_index_, mix64(substream_) ^ (tag + 1));
}

double RandomStream::uniform() {
    // 53-bit mantissa, offset by half an ulp so 0 and 1 are excluded.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential() {
    return -std::log(uniform());
}

}  // namespace subdiff

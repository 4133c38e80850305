#pragma once

#include <cstdint>

namespace ginin {

// Minimal counter-free splitmix64 stream. Used instead of <random> engines so
// that sequences are bit-identical across standard library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in (0,1): 53 random mantissa bits, zero mapped away from 0
  // so inverse-transform sampling never evaluates a quantile at an endpoint.
  double next_uniform() {
    const std::uint64_t bits = next_u64() >> 11;
    double u = static_cast<double>(bits) * 0x1.0p-53;
    if (u <= 0.0) u = 0x1.0p-53;
    return u;
  }

 private:
  std::uint64_t state_;
};

// Derives an independent per-replication stream from a base seed. Replications
// seeded this way can run in any order (or in parallel) with identical output.
inline SplitMix64 replication_stream(std::uint64_t seed, std::uint64_t replication_index) {
  SplitMix64 mixer(seed ^ (0xd1b54a32d192ed03ULL + replication_index * 0x9e3779b97f4a7c15ULL));
  return SplitMix64(mixer.next_u64());
}

}  // namespace ginin

#pragma once

#include <cstdint>

namespace heraldsim {

/// Counter-based splittable random stream. The state is a plain counter
/// advanced by a fixed odd increment and the output is a strong 64-bit mix
/// (splitmix64 finalizer), so a stream is fully determined by (seed, stream
/// id). Distinct (seed, stream) pairs give statistically independent
/// sequences, which is what makes block-parallel Monte Carlo runs
/// bit-reproducible regardless of how blocks are scheduled onto workers.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(mix(seed) ^ (stream + kStreamSalt))) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  static constexpr std::uint64_t kStreamSalt = 0x6a09e667f3bcc909ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

} // namespace heraldsim

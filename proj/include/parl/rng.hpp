#pragma once

#include <cstdint>

namespace parl {

/// Deterministic counter-based random stream (splitmix64). The same seed
/// yields the same draw sequence on every platform, which the experiment
/// harness relies on for byte-identical reruns.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). Rejection sampling keeps it unbiased.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

  std::uint64_t seed() const { return seed_; }

  /// Child seed for stream/run `index`, so that sweeps and the per-run
  /// agent/environment/mitigation streams are independent but reproducible:
  /// child = mix64(seed + (index + 1) * 0x9E3779B97F4A7C15).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    RngStream child(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
    return child.next_u64();
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace parl

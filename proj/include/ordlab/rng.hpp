#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace ordlab {

/// Deterministic RNG with counter-based stream splitting: every consumer
/// derives its own stream from (seed, stream index), so results do not
/// depend on call interleaving or worker scheduling. Raw mt19937_64 output
/// is mapped to doubles/indices by hand; std::uniform_*_distribution is
/// avoided because its output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(mix(mix(seed) ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

  static Rng stream(std::uint64_t seed, std::uint64_t stream_index) {
    return Rng(seed, stream_index);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n); n >= 1.
  std::size_t below(std::size_t n) {
    // Rejection sampling on the top bits keeps the mapping exact.
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  /// Samples an index from a probability vector (entries sum to ~1).
  std::size_t categorical(std::span<const double> probs) {
    double u = uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return i;
    }
    return probs.empty() ? 0 : probs.size() - 1;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    // SplitMix64 finalizer.
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace ordlab

#pragma once

#include <cstdint>
#include <random>

namespace axelrod {

/// Mixes a base seed with a stream index (splitmix64 finalizer). Used to
/// derive per-replicate seeds so that every replicate can be rerun alone.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Seedable pseudo-random stream. All variate transforms are written out
/// here instead of using <random> distributions, whose output is not
/// specified by the standard; this keeps runs bit-identical across
/// standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Independent substream for replicate `index` of a run seeded with `seed`.
  static RandomStream substream(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(derive_seed(seed, index));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Uniform on (0, 1].
  double uniform_positive() { return 1.0 - uniform(); }

  /// Uniform integer on [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  bool coin() { return (next() >> 63) != 0; }

  double exponential(double rate);

  /// Number of Bernoulli(success) trials up to and including the first
  /// success; support {1, 2, ...}.
  std::uint64_t geometric(double success);

 private:
  std::mt19937_64 engine_;
};

}  // namespace axelrod

#pragma once

#include <cstdint>

namespace seedtrace {

/// SplitMix64 finalizer. Bijective on 64-bit words with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of stream `index` under `master`:
///   derive_seed(m, i) = mix64(m ^ mix64(i + 0x9e3779b97f4a7c15)).
/// Streams are independent of how many other indices are in use, so
/// appending trials to an experiment never perturbs earlier ones.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

/// xoshiro256** seeded by four successive SplitMix64 outputs.
///
/// All samplers below are defined bit-for-bit here rather than through
/// <random> distributions, whose output is implementation-defined; a given
/// seed therefore yields the same trees with every compiler and standard
/// library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  /// bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  /// Standard exponential, -log(1 - U).
  double exponential();

 private:
  std::uint64_t s_[4];
};

}  // namespace seedtrace

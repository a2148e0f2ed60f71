#pragma once

#include <cstdint>

namespace lact {

/// Deterministic generator: xoshiro256++ seeded through splitmix64, with an
/// explicit Box-Muller normal. Every draw is fully specified here (no
/// standard-library distributions), so seeded runs are byte-reproducible and
/// per-ray streams can be derived from (seed, counter) pairs.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform();

  /// Standard normal via Box-Muller (pairs cached).
  double normal();

  /// Derive a stream seed from a base seed and a counter; used for
  /// schedule-independent per-ray noise streams.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t counter);

private:
  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace lact

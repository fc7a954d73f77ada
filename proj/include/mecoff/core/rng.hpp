#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mecoff {

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the distributions below are implemented
// here rather than taken from <random> because the standard library ones are
// allowed to differ between implementations.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01();

  /// Uniform integer on [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Poisson(lambda) by sequential inversion; large rates are split into
  /// chunks so exp(-lambda) never underflows.
  std::int64_t poisson(double lambda);

 private:
  std::mt19937_64 engine_;
};

/// Identical (seed, stream_id) pairs give identical sequences; distinct
/// stream ids give unrelated streams.
Rng seeded_rng(std::uint64_t seed, std::uint64_t stream_id);

/// Folds a tuple of identifiers into one stream id (SplitMix64 chaining).
std::uint64_t make_stream_id(std::initializer_list<std::uint64_t> parts);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mecoff

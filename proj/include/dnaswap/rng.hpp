#pragma once

#include <cstdint>
#include <random>

namespace dnaswap {

/// Mixes a parent seed with a stream id into an independent child seed
/// (SplitMix64 finalizer).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream);

/// Seedable, splittable generator. Draws are bit-reproducible across
/// platforms: only the raw mt19937_64 output is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  /// Child generator for an independent stream; does not advance *this.
  Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace dnaswap

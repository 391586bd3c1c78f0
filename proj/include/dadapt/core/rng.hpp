#pragma once

#include <cstdint>
#include <span>

namespace dadapt {

/// xoshiro256** seeded through splitmix64. Sequences depend only on the
/// (seed, stream) pair and integer arithmetic, so they are identical on
/// every platform.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller (no cached second value).
  double normal();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_[4];
};

Rng seeded_rng(std::uint64_t master_seed, std::uint64_t stream_id);

std::uint64_t splitmix64(std::uint64_t& state);

/// 64-bit FNV-1a; used to key run streams by configuration text.
std::uint64_t fnv1a64(std::span<const char> bytes);

}  // namespace dadapt

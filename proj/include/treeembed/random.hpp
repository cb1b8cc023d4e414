#ifndef TREEEMBED_RANDOM_HPP
#define TREEEMBED_RANDOM_HPP

#include <cstdint>
#include <random>

namespace treeembed {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives the seed of stream `index` from `base`:
///   mix(base, i) = splitmix64(base ^ splitmix64(i))
/// Every trial of an experiment gets mix(base_seed, trial_index), so any
/// subset of trials can be replayed on its own.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64(base ^ splitmix64(index));
}

/// Seeded generator used everywhere randomness is consumed.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Bounded integers and reals are derived here rather than through
/// <random> distributions (whose algorithms are implementation-defined), so a
/// seed reproduces the same draws with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection;
  /// exactly uniform. bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1].
  double open_unit() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace treeembed

#endif  // TREEEMBED_RANDOM_HPP

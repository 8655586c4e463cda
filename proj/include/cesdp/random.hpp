#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace cesdp {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Hashes an ordered tuple of words into one seed. Order matters:
/// hash_words({a, b}) != hash_words({b, a}) in general.
constexpr std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x6a09e667f3bcc909ULL ^ words.size();
  for (std::uint64_t w : words) h = mix64(h ^ mix64(w));
  return h;
}

/// Stream tags used to split one execution seed into independent substreams.
enum class StreamTag : std::uint64_t {
  kNetwork = 0x4e4554,
  kAgentInit = 0x494e4954,
  kDesignStep = 0x53544550,
  kSubsample = 0x53554253,
};

/**
 * @brief Seeded random stream.
 *
 * Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
 * derives every variate from raw 64-bit words, so draws are identical across
 * standard-library implementations. std::*_distribution is avoided on purpose:
 * its algorithms are implementation-defined.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0,
                       std::uint64_t b = 0) {
    return Rng(hash_words({seed, static_cast<std::uint64_t>(tag), a, b}));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Rejects the low residue class so every result is equally likely.
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard Cauchy variate.
  double cauchy() { return std::tan(std::numbers::pi * (uniform01() - 0.5)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cesdp

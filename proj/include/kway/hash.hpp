#pragma once

#include <cstdint>
#include <string_view>

namespace kway {

using Key = std::uint64_t;
using Value = std::uint64_t;

/// SplitMix64 finalizer. A bijection on 64-bit words with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seeded 64-bit hash. For a fixed seed this is a bijection, so distinct keys
/// never collide on the full 64 bits.
constexpr std::uint64_t hash64(std::uint64_t key, std::uint64_t seed) noexcept {
  return mix64(key ^ mix64(seed + 0x9E3779B97F4A7C15ULL));
}

/// Seed used for fingerprints, derived from the set-addressing seed so the two
/// hashes are independent.
constexpr std::uint64_t fingerprint_seed(std::uint64_t hash_seed) noexcept {
  return mix64(hash_seed ^ 0x5851F42D4C957F2DULL);
}

/// Seed used to canonicalize string keys.
inline constexpr std::uint64_t kStringKeySeed = 0xD6E8FEB86659FD93ULL;

constexpr std::uint64_t fingerprint(Key key, std::uint64_t seed) noexcept {
  return hash64(key, fingerprint_seed(seed));
}

/// FNV-1a over the bytes, then mixed with a seed.
constexpr Key hash_string(std::string_view s,
                          std::uint64_t seed = kStringKeySeed) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return hash64(h, seed);
}

/// Deterministic value stored for a key by the simulator and the harness.
constexpr Value value_for(Key key) noexcept {
  return mix64(key ^ 0xA0761D6478BD642FULL);
}

/// Splittable PRNG state (SplitMix64).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }
  constexpr std::uint64_t operator()() noexcept { return next(); }

  /// Independent child stream.
  constexpr SplitMix64 split() noexcept { return SplitMix64(next() ^ 0x6A09E667F3BCC909ULL); }

  /// Uniform integer in [0, bound), bound > 0. Multiply-shift reduction.
  std::uint64_t below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

 private:
  std::uint64_t state_;
};

}  // namespace kway

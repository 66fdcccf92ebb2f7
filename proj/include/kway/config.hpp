#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "kway/hash.hpp"

namespace kway {

enum class Policy { kLru, kLfu, kFifo, kRandom, kHyperbolic };

/// Concurrency realization of a k-way cache.
///   kWfa  - wait-free slot array of node references
///   kWfsc - wait-free with separate counter and fingerprint arrays
///   kLs   - one reader/writer lock per set
///   kSt   - single-threaded reference
enum class Variant { kWfa, kWfsc, kLs, kSt };

std::string_view to_string(Policy p) noexcept;
std::string_view to_string(Variant v) noexcept;
/// Case-insensitive. Throws std::invalid_argument on unknown names.
Policy parse_policy(std::string_view name);
Variant parse_variant(std::string_view name);

struct CacheConfig {
  std::size_t capacity = 0;
  std::size_t ways = 0;
  Policy policy = Policy::kLru;
  Variant variant = Variant::kSt;
  bool admission = false;
  std::uint64_t hash_seed = 0x9E3779B97F4A7C15ULL;

  std::size_t num_sets() const noexcept { return capacity / ways; }

  /// Rounds capacity up so that capacity / ways is a power of two.
  /// Throws std::invalid_argument when capacity or ways is zero or
  /// ways > requested capacity.
  static CacheConfig make(std::size_t requested_capacity, std::size_t ways,
                          Policy policy = Policy::kLru,
                          Variant variant = Variant::kSt, bool admission = false,
                          std::uint64_t hash_seed = 0x9E3779B97F4A7C15ULL);
};

constexpr bool is_power_of_two(std::size_t x) noexcept { return x != 0 && (x & (x - 1)) == 0; }

constexpr std::size_t next_power_of_two(std::size_t x) noexcept {
  std::size_t p = 1;
  while (p < x) p <<= 1;
  return p;
}

/// hash(key) masked to the set count. num_sets must be a power of two.
constexpr std::size_t set_index(Key key, std::size_t num_sets, std::uint64_t seed) noexcept {
  return static_cast<std::size_t>(hash64(key, seed) & (num_sets - 1));
}

inline std::size_t set_index(Key key, const CacheConfig& config) noexcept {
  return set_index(key, config.num_sets(), config.hash_seed);
}

/// Human-readable "key=value" summary, used in output headers.
std::string describe(const CacheConfig& config);

}  // namespace kway

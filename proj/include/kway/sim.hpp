#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kway/cache.hpp"
#include "kway/config.hpp"
#include "kway/traces.hpp"

namespace kway {

struct RunMetrics {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  double wall_seconds = 0;

  std::uint64_t requests() const noexcept { return hits + misses; }
  double hit_ratio() const noexcept {
    return requests() == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(requests());
  }
  double ops_per_sec() const noexcept {
    return wall_seconds > 0 ? static_cast<double>(requests()) / wall_seconds : 0.0;
  }
};

/// Get each key; on a miss put (key, value_for(key)). Throws on an empty stream.
RunMetrics replay(Cache& cache, const KeyStream& stream);

/// Inserts the resident keys (bypassing admission), then replays the steps.
RunMetrics replay(Cache& cache, const RequestScript& script);

/// Hit ratio of `stream` on a single-threaded k-way cache built from `config`.
/// The variant field is ignored.
RunMetrics run_hit_ratio(CacheConfig config, const KeyStream& stream);

enum class CacheKind { kKWay, kSampled, kFullyAssociative };

struct SweepRow {
  std::string label;
  CacheKind kind;
  /// Ways for k-way rows, sample size for sampled rows, capacity for FA.
  std::size_t width;
  std::size_t capacity;
  RunMetrics metrics;
};

/// One row per ways value, per sample size, and a final fully associative row,
/// all replaying the same stream with base.policy and base.admission.
/// K-way rows round base.capacity as CacheConfig::make does.
std::vector<SweepRow> sweep_associativity(const CacheConfig& base, const KeyStream& stream,
                                          const std::vector<std::size_t>& ways_list,
                                          const std::vector<std::size_t>& sample_sizes);

struct BallsInBinsResult {
  std::size_t slots;
  std::size_t ways;
  std::size_t sets;
  std::size_t items;
  std::size_t trials;
  std::size_t successes;

  double success_fraction() const noexcept {
    return static_cast<double>(successes) / static_cast<double>(trials);
  }
  double failure_fraction() const noexcept { return 1.0 - success_fraction(); }
};

/// Monte-Carlo estimate of the probability that `items` random keys hashed
/// into slots/ways sets leave every set with at most `ways` keys. Keys are
/// fresh 64-bit random words bucketed by the cache's set hash (mask for
/// power-of-two set counts, multiply-shift reduction otherwise).
BallsInBinsResult balls_in_bins(std::size_t slots, std::size_t ways, std::size_t items,
                                std::size_t trials, std::uint64_t seed,
                                std::uint64_t hash_seed = 0x9E3779B97F4A7C15ULL);

/// Union bound on the probability that some set overflows when `items` keys go
/// into a k-way cache of `slots` slots with slots >= 2 * items:
/// (slots / ways) * exp(-ways / 6).
double theorem_failure_bound(std::size_t slots, std::size_t items, std::size_t ways);

}  // namespace kway

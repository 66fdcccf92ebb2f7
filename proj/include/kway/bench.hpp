#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kway/cache.hpp"
#include "kway/config.hpp"
#include "kway/sim.hpp"
#include "kway/traces.hpp"

namespace kway {

/// What the harness drives: a k-way variant, or a baseline behind one lock.
enum class BenchTarget { kKWay, kLockedFullyAssociative, kLockedSampled };

struct BenchPlan {
  BenchTarget target = BenchTarget::kKWay;
  CacheConfig config;
  std::size_t sample_size = 8;
  /// Trace to replay. Ignored when `synthetic` is set.
  KeyStream stream;
  /// Synthetic workload. MISS100 keys, and the fresh keys of fixed-hit
  /// scripts, are generated on the fly per thread so they never repeat.
  std::optional<SyntheticSpec> synthetic;
  std::size_t threads = 1;
  double duration_secs = 1.0;
  std::size_t repeats = 11;
  std::uint64_t seed = 1;
  bool pin_threads = false;
};

struct BenchResult {
  std::string variant;
  Policy policy = Policy::kLru;
  std::size_t ways = 0;
  std::size_t capacity = 0;
  std::size_t threads = 0;
  std::vector<double> ops_per_sec;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t gets = 0;
  std::uint64_t puts = 0;

  double mean_ops_per_sec() const noexcept;
  double hit_ratio() const noexcept {
    return hits + misses == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(hits + misses);
  }
};

/// Throws std::invalid_argument on an unusable plan.
void validate(const BenchPlan& plan);

/// Fresh cache for one repeat.
std::unique_ptr<Cache> make_bench_cache(const BenchPlan& plan);

/// Label used in reports: the variant name or "fa" / "sampled-S".
std::string target_label(const BenchPlan& plan);

/// Source of warm-up keys that never occur in the workload.
class WarmupKeys {
 public:
  explicit WarmupKeys(const BenchPlan& plan);
  /// `capacity` keys that exactly fill every set of the plan's cache
  /// (any `capacity` distinct keys for the baselines).
  std::vector<Key> filling(std::size_t capacity) const;
  /// Extra keys for worker `thread`, disjoint across threads.
  std::vector<Key> for_thread(std::size_t thread, std::size_t count) const;

 private:
  bool usable(Key k) const;
  const BenchPlan& plan_;
  std::vector<Key> avoid_;
};

/// Main-thread phase of the warm-up: fills the cache with non-workload keys,
/// bypassing admission. For fixed-hit scripts the script's resident keys are
/// used instead so the scripted hits can hit.
void warm_up(Cache& cache, const BenchPlan& plan);

/// Runs plan.repeats timed repeats, each on a fresh warmed cache.
BenchResult run_throughput(const BenchPlan& plan);

}  // namespace kway

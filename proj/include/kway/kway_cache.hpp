#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "kway/cache.hpp"
#include "kway/config.hpp"
#include "kway/frequency_sketch.hpp"
#include "kway/policy.hpp"

namespace kway {

/// Per-set logical clock. tick() returns 1 on a fresh clock.
class LogicalClock {
 public:
  LogicalTime tick() noexcept { return time_.fetch_add(1, std::memory_order_relaxed) + 1; }
  LogicalTime now() const noexcept { return time_.load(std::memory_order_relaxed); }

 private:
  std::atomic<LogicalTime> time_{0};
};

struct alignas(64) PaddedClock {
  LogicalClock clock;
};

/// SplitMix64 stream shared between threads. fork() hands out a generator
/// whose first draw equals the next draw of the sequential stream.
class SharedRng {
 public:
  explicit SharedRng(std::uint64_t seed) : state_(seed) {}
  SplitMix64 fork() noexcept {
    return SplitMix64(state_.fetch_add(0x9E3779B97F4A7C15ULL, std::memory_order_relaxed));
  }

 private:
  std::atomic<std::uint64_t> state_;
};

/// Reader/writer spin lock with an optimistic reader-to-writer upgrade.
class RwSpinLock {
 public:
  void lock_shared() noexcept;
  void unlock_shared() noexcept { state_.fetch_sub(1, std::memory_order_release); }
  void lock() noexcept;
  void unlock() noexcept { state_.store(0, std::memory_order_release); }
  /// Succeeds only when the caller is the sole reader.
  bool try_upgrade() noexcept {
    std::uint32_t expected = 1;
    return state_.compare_exchange_strong(expected, kWriter, std::memory_order_acquire);
  }

 private:
  static constexpr std::uint32_t kWriter = 0x80000000U;
  std::atomic<std::uint32_t> state_{0};
};

/// Shared state of every k-way variant: configuration, set addressing,
/// optional admission sketch and statistics.
class KWayCache : public Cache {
 public:
  const CacheConfig& config() const noexcept { return config_; }
  std::size_t capacity() const override { return config_.capacity; }
  CacheStats stats() const override { return stats_.total(); }
  std::string name() const override;
  std::vector<Key> resident_keys() const override;

  /// Keys stored in one set, in slot order. Quiescent use only.
  virtual std::vector<Key> set_keys(std::size_t set) const = 0;

  const FrequencySketch* sketch() const noexcept { return sketch_ ? &*sketch_ : nullptr; }

 protected:
  explicit KWayCache(const CacheConfig& config);

  std::size_t set_of(Key key) const noexcept {
    return static_cast<std::size_t>(hash64(key, config_.hash_seed) & set_mask_);
  }
  void note_request(Key key) noexcept {
    if (sketch_) sketch_->record(key);
  }
  bool admits(Key candidate, Key victim, PutMode mode) const noexcept {
    return mode == PutMode::kForce || !sketch_ || sketch_->admit(candidate, victim);
  }

  CacheConfig config_;
  std::size_t ways_;
  std::uint64_t set_mask_;
  std::optional<FrequencySketch> sketch_;
  StatsCounter stats_;
};

/// Sketch seed used by every cache built from `hash_seed`.
constexpr std::uint64_t sketch_seed(std::uint64_t hash_seed) noexcept {
  return mix64(hash_seed ^ 0x3C6EF372FE94F82BULL);
}

/// Builds the variant named by config.variant.
std::unique_ptr<KWayCache> make_cache(const CacheConfig& config);

/// Single-threaded reference. Callers must serialize access.
class StCache final : public KWayCache {
 public:
  explicit StCache(const CacheConfig& config);
  std::optional<Value> get(Key key) override;
  void put(Key key, Value value, PutMode mode = PutMode::kAdmit) override;
  std::vector<Key> set_keys(std::size_t set) const override;

 private:
  struct Entry {
    Key key = 0;
    Value value = 0;
    std::uint32_t meta = 0;
    LogicalTime birth = 0;
    bool occupied = false;
  };
  std::span<Entry> set_span(std::size_t set) noexcept {
    return {entries_.data() + set * ways_, ways_};
  }

  std::vector<Entry> entries_;
  std::vector<LogicalTime> clocks_;
  std::vector<SlotView> view_;
  SplitMix64 rng_;
};

/// Wait-free sets of node references. Hits update the node's counter in
/// place; writes build a fresh node and swap it into the slot with one
/// compare-and-exchange, giving up if the slot changed.
class WfaCache final : public KWayCache {
 public:
  explicit WfaCache(const CacheConfig& config);
  ~WfaCache() override;
  WfaCache(const WfaCache&) = delete;
  WfaCache& operator=(const WfaCache&) = delete;

  std::optional<Value> get(Key key) override;
  void put(Key key, Value value, PutMode mode = PutMode::kAdmit) override;
  std::vector<Key> set_keys(std::size_t set) const override;

 private:
  struct Node {
    Key key;
    Value value;
    std::atomic<std::uint32_t> meta;
    LogicalTime birth;
    std::uint32_t index;
  };
  std::atomic<Node*>& slot(std::size_t set, std::size_t way) noexcept {
    return slots_[set * ways_ + way];
  }

  std::unique_ptr<std::atomic<Node*>[]> slots_;
  std::vector<PaddedClock> clocks_;
  SharedRng rng_;
};

/// Wait-free sets with node references plus parallel per-slot counter,
/// birth and fingerprint arrays. Scans and victim selection read only the
/// contiguous arrays; a node is dereferenced only on a fingerprint match.
///
/// The counter array holds access state relative to insertion and is zeroed
/// whenever a slot is refilled: for LRU it is the last access time (0 = not
/// accessed since insertion, so the birth time stands in), for LFU and
/// Hyperbolic it counts accesses after the first.
class WfscCache final : public KWayCache {
 public:
  explicit WfscCache(const CacheConfig& config);
  ~WfscCache() override;
  WfscCache(const WfscCache&) = delete;
  WfscCache& operator=(const WfscCache&) = delete;

  std::optional<Value> get(Key key) override;
  void put(Key key, Value value, PutMode mode = PutMode::kAdmit) override;
  std::vector<Key> set_keys(std::size_t set) const override;

  std::uint64_t fingerprint_at(std::size_t set, std::size_t way) const noexcept {
    return fingerprints_[set * ways_ + way].load();
  }
  std::uint32_t counter_at(std::size_t set, std::size_t way) const noexcept {
    return counters_[set * ways_ + way].load();
  }

 private:
  struct Node {
    Key key;
    Value value;
  };
  void touch(std::size_t slot, LogicalTime now) noexcept;
  void install(std::size_t slot, Key key, LogicalTime now) noexcept;
  SlotView view_of(std::size_t slot, bool occupied) const noexcept;

  std::unique_ptr<std::atomic<Node*>[]> slots_;
  std::unique_ptr<std::atomic<std::uint32_t>[]> counters_;
  std::unique_ptr<std::atomic<LogicalTime>[]> births_;
  std::unique_ptr<std::atomic<std::uint64_t>[]> fingerprints_;
  std::vector<PaddedClock> clocks_;
  SharedRng rng_;
};

/// One reader/writer lock per set. Hits run under the shared lock and try
/// to upgrade for the metadata update; a failed upgrade returns the value
/// without touching the metadata.
class LsCache final : public KWayCache {
 public:
  explicit LsCache(const CacheConfig& config);
  std::optional<Value> get(Key key) override;
  void put(Key key, Value value, PutMode mode = PutMode::kAdmit) override;
  std::vector<Key> set_keys(std::size_t set) const override;

 private:
  struct Entry {
    Key key = 0;
    Value value = 0;
    std::uint32_t meta = 0;
    LogicalTime birth = 0;
    bool occupied = false;
  };
  struct alignas(64) SetHeader {
    RwSpinLock lock;
    LogicalClock clock;
  };
  void insert_locked(std::size_t set, Key key, Value value, PutMode mode);

  std::vector<Entry> entries_;
  std::unique_ptr<SetHeader[]> headers_;
  SharedRng rng_;
};

}  // namespace kway

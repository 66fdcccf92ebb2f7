#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "kway/cache.hpp"
#include "kway/config.hpp"
#include "kway/frequency_sketch.hpp"
#include "kway/policy.hpp"

namespace kway {

/// Fully associative cache with exact global policy semantics.
///
/// Entries live in a flat slot array filled in order; LRU, FIFO and LFU keep an
/// ordered index over (meta, birth) so the victim is the first element.
/// Hyperbolic priorities drift with time, so that policy scans all entries.
/// Single-threaded.
class FullyAssociativeCache final : public Cache {
 public:
  FullyAssociativeCache(std::size_t capacity, Policy policy, bool admission = false,
                        std::uint64_t hash_seed = 0x9E3779B97F4A7C15ULL);

  std::optional<Value> get(Key key) override;
  void put(Key key, Value value, PutMode mode = PutMode::kAdmit) override;
  std::vector<Key> resident_keys() const override;
  CacheStats stats() const override { return stats_; }
  std::size_t capacity() const override { return slots_.size(); }
  std::string name() const override { return "fa"; }

 private:
  struct Entry {
    Key key;
    Value value;
    std::uint32_t meta;
    LogicalTime birth;
  };
  using OrderKey = std::tuple<std::uint32_t, LogicalTime, std::size_t>;

  bool ordered() const noexcept {
    return policy_ == Policy::kLru || policy_ == Policy::kFifo || policy_ == Policy::kLfu;
  }
  void touch(std::size_t slot);
  std::size_t pick_victim(LogicalTime now);

  Policy policy_;
  std::vector<Entry> slots_;
  std::size_t size_ = 0;
  std::unordered_map<Key, std::size_t> index_;
  std::set<OrderKey> order_;
  LogicalTime clock_ = 0;
  SplitMix64 rng_;
  std::optional<FrequencySketch> sketch_;
  CacheStats stats_;
};

/// Evicts the lowest-priority entry among a uniform sample, drawn without
/// replacement, of resident entries. Single-threaded.
class SampledCache final : public Cache {
 public:
  SampledCache(std::size_t capacity, std::size_t sample_size, Policy policy,
               bool admission = false, std::uint64_t hash_seed = 0x9E3779B97F4A7C15ULL);

  std::optional<Value> get(Key key) override;
  void put(Key key, Value value, PutMode mode = PutMode::kAdmit) override;
  std::vector<Key> resident_keys() const override;
  CacheStats stats() const override { return stats_; }
  std::size_t capacity() const override { return slots_.size(); }
  std::string name() const override { return "sampled-" + std::to_string(sample_size_); }

  std::size_t sample_size() const noexcept { return sample_size_; }

 private:
  struct Entry {
    Key key;
    Value value;
    std::uint32_t meta;
    LogicalTime birth;
  };
  std::size_t pick_victim(LogicalTime now);

  Policy policy_;
  std::size_t sample_size_;
  std::vector<Entry> slots_;
  std::size_t size_ = 0;
  std::vector<std::size_t> permutation_;
  std::unordered_map<Key, std::size_t> index_;
  LogicalTime clock_ = 0;
  SplitMix64 rng_;
  std::optional<FrequencySketch> sketch_;
  CacheStats stats_;
};

/// Serializes every operation of the wrapped cache behind one mutex. The
/// throughput strawman for fully associative designs.
class GlobalLockCache final : public Cache {
 public:
  explicit GlobalLockCache(std::unique_ptr<Cache> inner) : inner_(std::move(inner)) {}

  std::optional<Value> get(Key key) override {
    std::lock_guard lock(mutex_);
    return inner_->get(key);
  }
  void put(Key key, Value value, PutMode mode = PutMode::kAdmit) override {
    std::lock_guard lock(mutex_);
    inner_->put(key, value, mode);
  }
  std::vector<Key> resident_keys() const override {
    std::lock_guard lock(mutex_);
    return inner_->resident_keys();
  }
  CacheStats stats() const override {
    std::lock_guard lock(mutex_);
    return inner_->stats();
  }
  std::size_t capacity() const override { return inner_->capacity(); }
  std::string name() const override { return "locked-" + inner_->name(); }

 private:
  mutable std::mutex mutex_;
  std::unique_ptr<Cache> inner_;
};

}  // namespace kway

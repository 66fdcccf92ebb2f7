#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kway/hash.hpp"

namespace kway {

/// kForce skips the admission filter. Used by warm-up.
enum class PutMode { kAdmit, kForce };

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t requests() const noexcept { return hits + misses; }
};

/// Hit/miss counters striped across threads, summed on read.
class StatsCounter {
 public:
  void add_hit() noexcept { stripe().hits.fetch_add(1, std::memory_order_relaxed); }
  void add_miss() noexcept { stripe().misses.fetch_add(1, std::memory_order_relaxed); }
  CacheStats total() const noexcept;

 private:
  static constexpr std::size_t kStripes = 64;
  struct alignas(64) Stripe {
    std::atomic<std::uint64_t> hits{0};
    std::atomic<std::uint64_t> misses{0};
  };
  Stripe& stripe() noexcept;
  std::array<Stripe, kStripes> stripes_;
};

/// Common interface of k-way caches and the baselines.
class Cache {
 public:
  virtual ~Cache() = default;

  virtual std::optional<Value> get(Key key) = 0;
  virtual void put(Key key, Value value, PutMode mode = PutMode::kAdmit) = 0;

  /// Keys of all occupied slots. Only meaningful while no thread is writing.
  virtual std::vector<Key> resident_keys() const = 0;
  virtual CacheStats stats() const = 0;
  virtual std::size_t capacity() const = 0;
  virtual std::string name() const = 0;
};

namespace detail {
/// Slot loads performed by the calling thread, for step-bound checks.
inline thread_local std::uint64_t slot_reads = 0;

/// Small per-thread index, assigned round robin on first use.
std::size_t thread_stripe() noexcept;
}  // namespace detail

}  // namespace kway

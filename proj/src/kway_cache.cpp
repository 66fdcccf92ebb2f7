#include "kway/kway_cache.hpp"

#include <stdexcept>
#include <thread>

namespace kway {
namespace {

void backoff(unsigned& spins) noexcept {
  if (++spins < 64) return;
  spins = 0;
  std::this_thread::yield();
}

}  // namespace

namespace detail {
std::size_t thread_stripe() noexcept {
  static std::atomic<std::size_t> next{0};
  thread_local const std::size_t stripe = next.fetch_add(1, std::memory_order_relaxed);
  return stripe;
}
}  // namespace detail

CacheStats StatsCounter::total() const noexcept {
  CacheStats out;
  for (const Stripe& s : stripes_) {
    out.hits += s.hits.load(std::memory_order_relaxed);
    out.misses += s.misses.load(std::memory_order_relaxed);
  }
  return out;
}

StatsCounter::Stripe& StatsCounter::stripe() noexcept {
  return stripes_[detail::thread_stripe() % kStripes];
}

void RwSpinLock::lock_shared() noexcept {
  unsigned spins = 0;
  for (;;) {
    std::uint32_t s = state_.load(std::memory_order_relaxed);
    if (!(s & kWriter) &&
        state_.compare_exchange_weak(s, s + 1, std::memory_order_acquire, std::memory_order_relaxed))
      return;
    backoff(spins);
  }
}

void RwSpinLock::lock() noexcept {
  unsigned spins = 0;
  for (;;) {
    std::uint32_t expected = 0;
    if (state_.compare_exchange_weak(expected, kWriter, std::memory_order_acquire,
                                     std::memory_order_relaxed))
      return;
    backoff(spins);
  }
}

KWayCache::KWayCache(const CacheConfig& config)
    : config_(config), ways_(config.ways), set_mask_(0) {
  if (config.ways == 0 || config.capacity == 0 || config.capacity % config.ways != 0 ||
      !is_power_of_two(config.num_sets()))
    throw std::invalid_argument("cache config must have a power-of-two set count; use CacheConfig::make");
  set_mask_ = config.num_sets() - 1;
  if (config.admission)
    sketch_.emplace(FrequencySketch::for_capacity(config.capacity, sketch_seed(config.hash_seed)));
}

std::string KWayCache::name() const {
  return "kway-" + std::string(to_string(config_.variant));
}

std::vector<Key> KWayCache::resident_keys() const {
  std::vector<Key> out;
  for (std::size_t s = 0; s < config_.num_sets(); ++s) {
    auto keys = set_keys(s);
    out.insert(out.end(), keys.begin(), keys.end());
  }
  return out;
}

std::unique_ptr<KWayCache> make_cache(const CacheConfig& config) {
  switch (config.variant) {
    case Variant::kWfa:
      return std::make_unique<WfaCache>(config);
    case Variant::kWfsc:
      return std::make_unique<WfscCache>(config);
    case Variant::kLs:
      return std::make_unique<LsCache>(config);
    case Variant::kSt:
      return std::make_unique<StCache>(config);
  }
  throw std::invalid_argument("unknown variant");
}

}  // namespace kway

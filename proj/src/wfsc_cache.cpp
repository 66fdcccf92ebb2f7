#include <algorithm>
#include <array>

#include "kway/epoch.hpp"
#include "kway/kway_cache.hpp"
#include "scratch.hpp"

namespace kway {
WfscCache::WfscCache(const CacheConfig& config)
    : KWayCache(config),
      slots_(std::make_unique<std::atomic<Node*>[]>(config.capacity)),
      counters_(std::make_unique<std::atomic<std::uint32_t>[]>(config.capacity)),
      births_(std::make_unique<std::atomic<LogicalTime>[]>(config.capacity)),
      fingerprints_(std::make_unique<std::atomic<std::uint64_t>[]>(config.capacity)),
      clocks_(config.num_sets()),
      rng_(config.hash_seed) {
  for (std::size_t i = 0; i < config.capacity; ++i) {
    slots_[i].store(nullptr, std::memory_order_relaxed);
    counters_[i].store(0, std::memory_order_relaxed);
    births_[i].store(0, std::memory_order_relaxed);
    fingerprints_[i].store(0, std::memory_order_relaxed);
  }
}

WfscCache::~WfscCache() {
  for (std::size_t i = 0; i < config_.capacity; ++i) delete slots_[i].load();
}

void WfscCache::touch(std::size_t slot, LogicalTime now) noexcept {
  switch (config_.policy) {
    case Policy::kLru:
      counters_[slot].store(now, std::memory_order_relaxed);
      break;
    case Policy::kLfu:
    case Policy::kHyperbolic:
      if (counters_[slot].load(std::memory_order_relaxed) < kMaxFrequency - 1)
        counters_[slot].fetch_add(1, std::memory_order_relaxed);
      break;
    case Policy::kFifo:
    case Policy::kRandom:
      break;
  }
}

void WfscCache::install(std::size_t slot, Key key, LogicalTime now) noexcept {
  fingerprints_[slot].store(fingerprint(key, config_.hash_seed));
  counters_[slot].store(0, std::memory_order_relaxed);
  births_[slot].store(now, std::memory_order_relaxed);
}

SlotView WfscCache::view_of(std::size_t slot, bool occupied) const noexcept {
  if (!occupied) return {};
  const std::uint32_t counter = counters_[slot].load(std::memory_order_relaxed);
  const LogicalTime birth = births_[slot].load(std::memory_order_relaxed);
  std::uint32_t meta = 0;
  switch (config_.policy) {
    case Policy::kLru:
      meta = counter == 0 ? birth : counter;
      break;
    case Policy::kLfu:
    case Policy::kHyperbolic:
      meta = counter + 1;
      break;
    case Policy::kFifo:
      meta = birth;
      break;
    case Policy::kRandom:
      break;
  }
  return {true, meta, birth};
}

std::optional<Value> WfscCache::get(Key key) {
  note_request(key);
  const std::size_t set = set_of(key);
  const std::size_t base = set * ways_;
  const std::uint64_t fp = fingerprint(key, config_.hash_seed);
  epoch::Guard guard;
  for (std::size_t i = 0; i < ways_; ++i) {
    ++detail::slot_reads;
    if (fingerprints_[base + i].load() != fp) continue;
    Node* n = slots_[base + i].load();
    if (n != nullptr && n->key == key) {
      touch(base + i, clocks_[set].clock.tick());
      stats_.add_hit();
      return n->value;
    }
  }
  stats_.add_miss();
  return std::nullopt;
}

void WfscCache::put(Key key, Value value, PutMode mode) {
  const std::size_t set = set_of(key);
  const std::size_t base = set * ways_;
  const std::uint64_t fp = fingerprint(key, config_.hash_seed);
  epoch::Guard guard;

  for (std::size_t i = 0; i < ways_; ++i) {
    ++detail::slot_reads;
    if (fingerprints_[base + i].load() != fp) continue;
    Node* n = slots_[base + i].load();
    if (n != nullptr && n->key == key) {
      const LogicalTime now = clocks_[set].clock.tick();
      auto* fresh = new Node{key, value};
      Node* expected = n;
      if (slots_[base + i].compare_exchange_strong(expected, fresh)) {
        epoch::retire(n);
        touch(base + i, now);
      } else {
        delete fresh;
      }
      return;
    }
  }

  detail::Scratch<Node*> snapshot(ways_);
  detail::Scratch<SlotView> view(ways_);
  bool full = true;
  for (std::size_t i = 0; i < ways_; ++i) {
    ++detail::slot_reads;
    snapshot[i] = slots_[base + i].load();
    view[i] = view_of(base + i, snapshot[i] != nullptr);
    full = full && snapshot[i] != nullptr;
  }

  const LogicalTime now = clocks_[set].clock.tick();
  SplitMix64 rng = (full && config_.policy == Policy::kRandom) ? rng_.fork() : SplitMix64{};
  std::size_t target = 0;
  if (auto victim = select_victim(view.span(), config_.policy, now, rng)) {
    target = *victim;
    // The node is read only when the admission filter needs the victim's key.
    if (sketch_ && !admits(key, snapshot[target]->key, mode)) return;
  } else {
    while (snapshot[target] != nullptr) ++target;
  }

  auto* fresh = new Node{key, value};
  Node* expected = snapshot[target];
  if (slots_[base + target].compare_exchange_strong(expected, fresh)) {
    if (snapshot[target] != nullptr) epoch::retire(snapshot[target]);
    install(base + target, key, now);
  } else {
    delete fresh;
  }
}

std::vector<Key> WfscCache::set_keys(std::size_t set) const {
  std::vector<Key> out;
  epoch::Guard guard;
  for (std::size_t i = 0; i < ways_; ++i)
    if (const Node* n = slots_[set * ways_ + i].load()) out.push_back(n->key);
  return out;
}

}  // namespace kway

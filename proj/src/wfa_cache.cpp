#include <algorithm>
#include <array>

#include "kway/epoch.hpp"
#include "kway/kway_cache.hpp"
#include "scratch.hpp"

namespace kway {
WfaCache::WfaCache(const CacheConfig& config)
    : KWayCache(config),
      slots_(std::make_unique<std::atomic<Node*>[]>(config.capacity)),
      clocks_(config.num_sets()),
      rng_(config.hash_seed) {
  for (std::size_t i = 0; i < config.capacity; ++i) slots_[i].store(nullptr, std::memory_order_relaxed);
}

WfaCache::~WfaCache() {
  for (std::size_t i = 0; i < config_.capacity; ++i) delete slots_[i].load();
}

std::optional<Value> WfaCache::get(Key key) {
  note_request(key);
  const std::size_t set = set_of(key);
  epoch::Guard guard;
  for (std::size_t i = 0; i < ways_; ++i) {
    ++detail::slot_reads;
    Node* n = slot(set, i).load();
    if (n != nullptr && n->key == key) {
      const LogicalTime now = clocks_[set].clock.tick();
      switch (config_.policy) {
        case Policy::kLru:
          n->meta.store(now, std::memory_order_relaxed);
          break;
        case Policy::kLfu:
        case Policy::kHyperbolic:
          if (n->meta.load(std::memory_order_relaxed) < kMaxFrequency)
            n->meta.fetch_add(1, std::memory_order_relaxed);
          break;
        case Policy::kFifo:
        case Policy::kRandom:
          break;
      }
      stats_.add_hit();
      return n->value;
    }
  }
  stats_.add_miss();
  return std::nullopt;
}

void WfaCache::put(Key key, Value value, PutMode mode) {
  const std::size_t set = set_of(key);
  epoch::Guard guard;

  detail::Scratch<Node*> snapshot(ways_);
  detail::Scratch<SlotView> view(ways_);

  for (std::size_t i = 0; i < ways_; ++i) {
    ++detail::slot_reads;
    Node* n = slot(set, i).load();
    snapshot[i] = n;
    if (n == nullptr) {
      view[i] = {};
      continue;
    }
    const std::uint32_t meta = n->meta.load(std::memory_order_relaxed);
    if (n->key == key) {
      const LogicalTime now = clocks_[set].clock.tick();
      auto* fresh = new Node{key, value, {on_access(config_.policy, meta, now)}, n->birth,
                             static_cast<std::uint32_t>(i)};
      Node* expected = n;
      if (slot(set, i).compare_exchange_strong(expected, fresh))
        epoch::retire(n);
      else
        delete fresh;
      return;
    }
    view[i] = {true, meta, n->birth};
  }

  const LogicalTime now = clocks_[set].clock.tick();
  const bool full = std::ranges::find(snapshot.span(), nullptr) == snapshot.span().end();
  SplitMix64 rng = (full && config_.policy == Policy::kRandom) ? rng_.fork() : SplitMix64{};
  std::size_t target = 0;
  if (auto victim = select_victim(view.span(), config_.policy, now, rng)) {
    target = *victim;
    if (!admits(key, snapshot[target]->key, mode)) return;
  } else {
    while (snapshot[target] != nullptr) ++target;
  }

  const InsertMeta m = on_insert(config_.policy, now);
  auto* fresh = new Node{key, value, {m.meta}, m.birth, static_cast<std::uint32_t>(target)};
  Node* expected = snapshot[target];
  if (slot(set, target).compare_exchange_strong(expected, fresh)) {
    if (snapshot[target] != nullptr) epoch::retire(snapshot[target]);
  } else {
    delete fresh;
  }
}

std::vector<Key> WfaCache::set_keys(std::size_t set) const {
  std::vector<Key> out;
  epoch::Guard guard;
  for (std::size_t i = 0; i < ways_; ++i)
    if (const Node* n = slots_[set * ways_ + i].load()) out.push_back(n->key);
  return out;
}

}  // namespace kway

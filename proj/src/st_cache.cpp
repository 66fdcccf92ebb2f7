#include "kway/kway_cache.hpp"

namespace kway {

StCache::StCache(const CacheConfig& config)
    : KWayCache(config),
      entries_(config.capacity),
      clocks_(config.num_sets(), 0),
      view_(config.ways),
      rng_(config.hash_seed) {}

std::optional<Value> StCache::get(Key key) {
  note_request(key);
  const std::size_t set = set_of(key);
  for (Entry& e : set_span(set)) {
    ++detail::slot_reads;
    if (e.occupied && e.key == key) {
      e.meta = on_access(config_.policy, e.meta, ++clocks_[set]);
      stats_.add_hit();
      return e.value;
    }
  }
  stats_.add_miss();
  return std::nullopt;
}

void StCache::put(Key key, Value value, PutMode mode) {
  const std::size_t set = set_of(key);
  std::span<Entry> entries = set_span(set);
  for (std::size_t i = 0; i < ways_; ++i) {
    Entry& e = entries[i];
    ++detail::slot_reads;
    if (e.occupied && e.key == key) {
      e.value = value;
      e.meta = on_access(config_.policy, e.meta, ++clocks_[set]);
      return;
    }
    view_[i] = {e.occupied, e.meta, e.birth};
  }

  const LogicalTime now = ++clocks_[set];
  std::size_t target = 0;
  if (auto victim = select_victim(view_, config_.policy, now, rng_)) {
    if (!admits(key, entries[*victim].key, mode)) return;
    target = *victim;
  } else {
    while (entries[target].occupied) ++target;
  }
  const InsertMeta m = on_insert(config_.policy, now);
  entries[target] = Entry{key, value, m.meta, m.birth, true};
}

std::vector<Key> StCache::set_keys(std::size_t set) const {
  std::vector<Key> out;
  for (std::size_t i = 0; i < ways_; ++i) {
    const Entry& e = entries_[set * ways_ + i];
    if (e.occupied) out.push_back(e.key);
  }
  return out;
}

}  // namespace kway

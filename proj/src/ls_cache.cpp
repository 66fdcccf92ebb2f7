#include "kway/kway_cache.hpp"
#include "scratch.hpp"

namespace kway {

LsCache::LsCache(const CacheConfig& config)
    : KWayCache(config),
      entries_(config.capacity),
      headers_(std::make_unique<SetHeader[]>(config.num_sets())),
      rng_(config.hash_seed) {}

std::optional<Value> LsCache::get(Key key) {
  note_request(key);
  const std::size_t set = set_of(key);
  SetHeader& header = headers_[set];
  Entry* entries = entries_.data() + set * ways_;

  header.lock.lock_shared();
  for (std::size_t i = 0; i < ways_; ++i) {
    ++detail::slot_reads;
    Entry& e = entries[i];
    if (e.occupied && e.key == key) {
      const Value value = e.value;
      if (header.lock.try_upgrade()) {
        e.meta = on_access(config_.policy, e.meta, header.clock.tick());
        header.lock.unlock();
      } else {
        header.lock.unlock_shared();
      }
      stats_.add_hit();
      return value;
    }
  }
  header.lock.unlock_shared();
  stats_.add_miss();
  return std::nullopt;
}

void LsCache::put(Key key, Value value, PutMode mode) {
  const std::size_t set = set_of(key);
  SetHeader& header = headers_[set];
  Entry* entries = entries_.data() + set * ways_;

  header.lock.lock_shared();
  for (std::size_t i = 0; i < ways_; ++i) {
    ++detail::slot_reads;
    Entry& e = entries[i];
    if (e.occupied && e.key == key) {
      if (!header.lock.try_upgrade()) {
        header.lock.unlock_shared();
        return;
      }
      e.value = value;
      e.meta = on_access(config_.policy, e.meta, header.clock.tick());
      header.lock.unlock();
      return;
    }
  }
  header.lock.unlock_shared();

  header.lock.lock();
  insert_locked(set, key, value, mode);
  header.lock.unlock();
}

void LsCache::insert_locked(std::size_t set, Key key, Value value, PutMode mode) {
  Entry* entries = entries_.data() + set * ways_;
  // The key may have arrived between dropping the shared lock and taking
  // the exclusive one.
  detail::Scratch<SlotView> view(ways_);
  bool full = true;
  for (std::size_t i = 0; i < ways_; ++i) {
    ++detail::slot_reads;
    Entry& e = entries[i];
    if (e.occupied && e.key == key) {
      e.value = value;
      e.meta = on_access(config_.policy, e.meta, headers_[set].clock.tick());
      return;
    }
    view[i] = {e.occupied, e.meta, e.birth};
    full = full && e.occupied;
  }

  const LogicalTime now = headers_[set].clock.tick();
  SplitMix64 rng = (full && config_.policy == Policy::kRandom) ? rng_.fork() : SplitMix64{};
  std::size_t target = 0;
  if (auto victim = select_victim(view.span(), config_.policy, now, rng)) {
    if (!admits(key, entries[*victim].key, mode)) return;
    target = *victim;
  } else {
    while (entries[target].occupied) ++target;
  }
  const InsertMeta m = on_insert(config_.policy, now);
  entries[target] = Entry{key, value, m.meta, m.birth, true};
}

std::vector<Key> LsCache::set_keys(std::size_t set) const {
  std::vector<Key> out;
  for (std::size_t i = 0; i < ways_; ++i) {
    const Entry& e = entries_[set * ways_ + i];
    if (e.occupied) out.push_back(e.key);
  }
  return out;
}

}  // namespace kway

#include "kway/baselines.hpp"

#include <numeric>
#include <stdexcept>

#include "kway/kway_cache.hpp"

namespace kway {
namespace {

std::optional<FrequencySketch> make_sketch(bool admission, std::size_t capacity,
                                           std::uint64_t hash_seed) {
  if (!admission) return std::nullopt;
  return FrequencySketch::for_capacity(capacity, sketch_seed(hash_seed));
}

}  // namespace

FullyAssociativeCache::FullyAssociativeCache(std::size_t capacity, Policy policy, bool admission,
                                             std::uint64_t hash_seed)
    : policy_(policy), rng_(hash_seed), sketch_(make_sketch(admission, capacity, hash_seed)) {
  if (capacity == 0) throw std::invalid_argument("capacity must be positive");
  slots_.resize(capacity);
  index_.reserve(capacity * 2);
}

void FullyAssociativeCache::touch(std::size_t slot) {
  Entry& e = slots_[slot];
  const LogicalTime now = ++clock_;
  const std::uint32_t meta = on_access(policy_, e.meta, now);
  if (ordered() && meta != e.meta) {
    order_.erase({e.meta, e.birth, slot});
    order_.insert({meta, e.birth, slot});
  }
  e.meta = meta;
}

std::optional<Value> FullyAssociativeCache::get(Key key) {
  if (sketch_) sketch_->record(key);
  auto it = index_.find(key);
  if (it == index_.end()) {
    ++stats_.misses;
    return std::nullopt;
  }
  touch(it->second);
  ++stats_.hits;
  return slots_[it->second].value;
}

std::size_t FullyAssociativeCache::pick_victim(LogicalTime now) {
  if (ordered()) return std::get<2>(*order_.begin());
  if (policy_ == Policy::kRandom) return static_cast<std::size_t>(rng_.below(slots_.size()));
  std::size_t victim = 0;
  SlotView best{true, slots_[0].meta, slots_[0].birth};
  for (std::size_t i = 1; i < slots_.size(); ++i) {
    const SlotView candidate{true, slots_[i].meta, slots_[i].birth};
    if (evicts_before(policy_, candidate, best, now)) {
      victim = i;
      best = candidate;
    }
  }
  return victim;
}

void FullyAssociativeCache::put(Key key, Value value, PutMode mode) {
  if (auto it = index_.find(key); it != index_.end()) {
    slots_[it->second].value = value;
    touch(it->second);
    return;
  }
  const LogicalTime now = ++clock_;
  std::size_t slot = size_;
  if (size_ == slots_.size()) {
    slot = pick_victim(now);
    Entry& victim = slots_[slot];
    if (mode == PutMode::kAdmit && sketch_ && !sketch_->admit(key, victim.key)) return;
    index_.erase(victim.key);
    if (ordered()) order_.erase({victim.meta, victim.birth, slot});
  } else {
    ++size_;
  }
  const InsertMeta m = on_insert(policy_, now);
  slots_[slot] = Entry{key, value, m.meta, m.birth};
  index_.emplace(key, slot);
  if (ordered()) order_.insert({m.meta, m.birth, slot});
}

std::vector<Key> FullyAssociativeCache::resident_keys() const {
  std::vector<Key> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(slots_[i].key);
  return out;
}

SampledCache::SampledCache(std::size_t capacity, std::size_t sample_size, Policy policy,
                           bool admission, std::uint64_t hash_seed)
    : policy_(policy),
      sample_size_(sample_size),
      rng_(hash_seed),
      sketch_(make_sketch(admission, capacity, hash_seed)) {
  if (capacity == 0) throw std::invalid_argument("capacity must be positive");
  if (sample_size == 0 || sample_size > capacity)
    throw std::invalid_argument("sample size must be in [1, capacity]");
  slots_.resize(capacity);
  permutation_.resize(capacity);
  std::iota(permutation_.begin(), permutation_.end(), std::size_t{0});
  index_.reserve(capacity * 2);
}

std::optional<Value> SampledCache::get(Key key) {
  if (sketch_) sketch_->record(key);
  auto it = index_.find(key);
  if (it == index_.end()) {
    ++stats_.misses;
    return std::nullopt;
  }
  Entry& e = slots_[it->second];
  e.meta = on_access(policy_, e.meta, ++clock_);
  ++stats_.hits;
  return e.value;
}

std::size_t SampledCache::pick_victim(LogicalTime now) {
  // Partial Fisher-Yates: the first sample_size_ positions of the permutation
  // become a uniform sample without replacement. The array stays a
  // permutation, so it is never reset.
  const std::size_t n = slots_.size();
  std::size_t victim = 0;
  for (std::size_t i = 0; i < sample_size_; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng_.below(n - i));
    std::swap(permutation_[i], permutation_[j]);
    const std::size_t candidate = permutation_[i];
    if (i == 0) {
      victim = candidate;
      continue;
    }
    if (policy_ == Policy::kRandom) continue;
    const SlotView c{true, slots_[candidate].meta, slots_[candidate].birth};
    const SlotView v{true, slots_[victim].meta, slots_[victim].birth};
    if (evicts_before(policy_, c, v, now)) victim = candidate;
  }
  return victim;
}

void SampledCache::put(Key key, Value value, PutMode mode) {
  if (auto it = index_.find(key); it != index_.end()) {
    Entry& e = slots_[it->second];
    e.value = value;
    e.meta = on_access(policy_, e.meta, ++clock_);
    return;
  }
  const LogicalTime now = ++clock_;
  std::size_t slot = size_;
  if (size_ == slots_.size()) {
    slot = pick_victim(now);
    const Key victim_key = slots_[slot].key;
    if (mode == PutMode::kAdmit && sketch_ && !sketch_->admit(key, victim_key)) return;
    index_.erase(victim_key);
  } else {
    ++size_;
  }
  const InsertMeta m = on_insert(policy_, now);
  slots_[slot] = Entry{key, value, m.meta, m.birth};
  index_.emplace(key, slot);
}

std::vector<Key> SampledCache::resident_keys() const {
  std::vector<Key> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(slots_[i].key);
  return out;
}

}  // namespace kway

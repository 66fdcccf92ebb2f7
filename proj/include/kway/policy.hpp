#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "kway/config.hpp"
#include "kway/hash.hpp"

namespace kway {

/// Per-set logical time. Wrap-around after 2^32 ticks is ignored.
using LogicalTime = std::uint32_t;

inline constexpr std::uint32_t kMaxFrequency = 0x7FFFFFFFU;

/// What victim selection needs to know about one way of a set.
/// Left uninitialized by default so scratch arrays cost nothing; use
/// SlotView{} for an empty slot.
struct SlotView {
  bool occupied;
  std::uint32_t meta;
  LogicalTime birth;
};

/// Metadata pair assigned to a freshly inserted entry.
struct InsertMeta {
  std::uint32_t meta;
  LogicalTime birth;
  friend bool operator==(const InsertMeta&, const InsertMeta&) = default;
};

/// True when `a` should be evicted before `b`. Ties on the policy metric go to
/// the earlier insertion. Not meaningful for kRandom.
bool evicts_before(Policy policy, const SlotView& a, const SlotView& b, LogicalTime now) noexcept;

/// Chooses the slot to evict from a set. Returns nullopt when some slot is
/// empty: sets fill before they evict. Remaining ties go to the lowest index.
std::optional<std::size_t> select_victim(std::span<const SlotView> set, Policy policy,
                                         LogicalTime now, SplitMix64& rng) noexcept;

/// New meta after a hit.
constexpr std::uint32_t on_access(Policy policy, std::uint32_t meta, LogicalTime now) noexcept {
  switch (policy) {
    case Policy::kLru:
      return now;
    case Policy::kLfu:
    case Policy::kHyperbolic:
      return meta < kMaxFrequency ? meta + 1 : meta;
    case Policy::kFifo:
    case Policy::kRandom:
      return meta;
  }
  return meta;
}

constexpr InsertMeta on_insert(Policy policy, LogicalTime now) noexcept {
  switch (policy) {
    case Policy::kLru:
    case Policy::kFifo:
      return {now, now};
    case Policy::kLfu:
    case Policy::kHyperbolic:
      return {1, now};
    case Policy::kRandom:
      return {0, now};
  }
  return {0, now};
}

}  // namespace kway

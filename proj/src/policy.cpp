#include "kway/policy.hpp"

#include <algorithm>

namespace kway {

bool evicts_before(Policy policy, const SlotView& a, const SlotView& b, LogicalTime now) noexcept {
  if (policy == Policy::kHyperbolic) {
    // a.meta / age_a < b.meta / age_b, cross-multiplied to stay exact.
    const std::uint64_t age_a = std::max<std::uint64_t>(1, static_cast<LogicalTime>(now - a.birth));
    const std::uint64_t age_b = std::max<std::uint64_t>(1, static_cast<LogicalTime>(now - b.birth));
    const std::uint64_t lhs = std::uint64_t{a.meta} * age_b;
    const std::uint64_t rhs = std::uint64_t{b.meta} * age_a;
    if (lhs != rhs) return lhs < rhs;
    return a.birth < b.birth;
  }
  if (a.meta != b.meta) return a.meta < b.meta;
  return a.birth < b.birth;
}

std::optional<std::size_t> select_victim(std::span<const SlotView> set, Policy policy,
                                         LogicalTime now, SplitMix64& rng) noexcept {
  for (const SlotView& s : set)
    if (!s.occupied) return std::nullopt;
  if (set.empty()) return std::nullopt;
  if (policy == Policy::kRandom) return static_cast<std::size_t>(rng.below(set.size()));

  std::size_t victim = 0;
  for (std::size_t i = 1; i < set.size(); ++i)
    if (evicts_before(policy, set[i], set[victim], now)) victim = i;
  return victim;
}

}  // namespace kway

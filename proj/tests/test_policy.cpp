#include <doctest.h>

#include <array>
#include <vector>

#include "kway/policy.hpp"

using namespace kway;

namespace {
std::vector<SlotView> full(std::initializer_list<std::uint32_t> metas) {
  std::vector<SlotView> v;
  for (auto m : metas) v.push_back({true, m, 0});
  return v;
}
}  // namespace

TEST_CASE("LRU evicts the smallest last-access time") {
  SplitMix64 rng;
  CHECK(select_victim(full({5, 3, 9, 1}), Policy::kLru, 10, rng) == 3);
}

TEST_CASE("an empty slot means no victim for every policy") {
  SplitMix64 rng;
  auto v = full({5, 3, 9, 1});
  v[2] = SlotView{};
  for (auto p : {Policy::kLru, Policy::kLfu, Policy::kFifo, Policy::kRandom, Policy::kHyperbolic})
    CHECK_FALSE(select_victim(v, p, 10, rng).has_value());
}

TEST_CASE("Hyperbolic evicts the smallest count per unit age") {
  SplitMix64 rng;
  const std::vector<SlotView> v{{true, 4, 0}, {true, 1, 8}};
  // 4/10 = 0.4 against 1/2 = 0.5.
  CHECK(select_victim(v, Policy::kHyperbolic, 10, rng) == 0);
  // An entry accessed in its insertion tick has age clamped to one.
  const std::vector<SlotView> same_tick{{true, 3, 10}, {true, 2, 10}};
  CHECK(select_victim(same_tick, Policy::kHyperbolic, 10, rng) == 1);
}

TEST_CASE("LFU ties go to the lowest slot") {
  SplitMix64 rng;
  CHECK(select_victim(full({7, 7, 2, 7}), Policy::kLfu, 10, rng) == 2);
  CHECK(select_victim(full({7, 7, 7, 7}), Policy::kLfu, 10, rng) == 0);
}

TEST_CASE("LFU ties prefer the earlier insertion") {
  SplitMix64 rng;
  const std::vector<SlotView> v{{true, 2, 9}, {true, 2, 4}, {true, 3, 1}};
  CHECK(select_victim(v, Policy::kLfu, 10, rng) == 1);
}

TEST_CASE("FIFO evicts the oldest insertion") {
  SplitMix64 rng;
  const std::vector<SlotView> v{{true, 6, 6}, {true, 2, 2}, {true, 4, 4}};
  CHECK(select_victim(v, Policy::kFifo, 10, rng) == 1);
}

TEST_CASE("Random picks uniformly among occupied slots") {
  SplitMix64 rng(11);
  std::array<int, 4> counts{};
  const auto v = full({1, 1, 1, 1});
  for (int i = 0; i < 40000; ++i) ++counts[*select_victim(v, Policy::kRandom, 1, rng)];
  for (int c : counts) CHECK(c == doctest::Approx(10000).epsilon(0.05));
}

TEST_CASE("select_victim is a pure function of its snapshot") {
  const std::vector<SlotView> v{{true, 3, 1}, {true, 9, 2}, {true, 1, 3}, {true, 5, 4}};
  for (auto p : {Policy::kLru, Policy::kLfu, Policy::kFifo, Policy::kHyperbolic, Policy::kRandom}) {
    SplitMix64 a(5), b(5);
    CHECK(select_victim(v, p, 20, a) == select_victim(v, p, 20, b));
  }
}

TEST_CASE("a full one-way set always evicts slot zero") {
  SplitMix64 rng(1);
  const std::vector<SlotView> v{{true, 42, 3}};
  for (auto p : {Policy::kLru, Policy::kLfu, Policy::kFifo, Policy::kRandom, Policy::kHyperbolic})
    CHECK(select_victim(v, p, 50, rng) == 0);
}

TEST_CASE("Hyperbolic comparison never divides by zero") {
  SplitMix64 rng(2);
  for (LogicalTime now = 0; now < 50; ++now)
    for (LogicalTime b = 0; b <= now; ++b) {
      const std::vector<SlotView> v{{true, 1, b}, {true, 1, now}};
      CHECK(select_victim(v, Policy::kHyperbolic, now, rng).has_value());
    }
}

TEST_CASE("on_access updates") {
  CHECK(on_access(Policy::kLru, 3, 17) == 17);
  CHECK(on_access(Policy::kLfu, 3, 17) == 4);
  CHECK(on_access(Policy::kHyperbolic, 3, 17) == 4);
  CHECK(on_access(Policy::kFifo, 3, 17) == 3);
  CHECK(on_access(Policy::kRandom, 3, 17) == 3);
  CHECK(on_access(Policy::kLfu, kMaxFrequency, 17) == kMaxFrequency);
}

TEST_CASE("on_insert metadata") {
  CHECK(on_insert(Policy::kHyperbolic, 9) == InsertMeta{1, 9});
  CHECK(on_insert(Policy::kLru, 9) == InsertMeta{9, 9});
  CHECK(on_insert(Policy::kLfu, 9) == InsertMeta{1, 9});
  CHECK(on_insert(Policy::kFifo, 9) == InsertMeta{9, 9});
  CHECK(on_insert(Policy::kRandom, 9) == InsertMeta{0, 9});
}

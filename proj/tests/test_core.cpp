#include <doctest.h>

#include <algorithm>
#include <set>
#include <thread>
#include <vector>

#include "kway/config.hpp"
#include "kway/hash.hpp"
#include "kway/kway_cache.hpp"

using namespace kway;

TEST_CASE("set_index with a single set is always zero") {
  const auto c = CacheConfig::make(8, 8);
  REQUIRE(c.num_sets() == 1);
  for (Key k = 0; k < 1000; ++k) CHECK(set_index(k, c) == 0);
}

TEST_CASE("set_index stays within the set count") {
  const auto c = CacheConfig::make(64, 8);
  REQUIRE(c.num_sets() == 8);
  SplitMix64 rng(3);
  for (int i = 0; i < 10000; ++i) CHECK(set_index(rng.next(), c) < 8);
}

TEST_CASE("set_index matches an independent evaluation of the hash") {
  // Frozen from a straight-line Python evaluation of the SplitMix64-based hash.
  const std::vector<std::size_t> expected{6, 0, 2, 5, 3, 3, 0, 6, 2, 3};
  for (Key k = 0; k < 10; ++k) CHECK(set_index(k, 8, 0x9E3779B97F4A7C15ULL) == expected[k]);
  CHECK(hash64(0, 0) == 0x48218226ff3cd4bfULL);
  CHECK(hash64(42, 7) == 0xd56fd4491d82a4ddULL);
}

TEST_CASE("fingerprint is deterministic and independent of set addressing") {
  const std::uint64_t seed = 1234;
  for (Key k = 0; k < 100; ++k) CHECK(fingerprint(k, seed) == fingerprint(k, seed));
  CHECK(fingerprint_seed(seed) != seed);

  // Keys sharing a set still spread over many fingerprint values.
  std::set<std::uint64_t> low_bits;
  for (Key k = 0; k < 4000; ++k)
    if (set_index(k, 8, seed) == 0) low_bits.insert(fingerprint(k, seed) & 7);
  CHECK(low_bits.size() == 8);
}

TEST_CASE("fingerprints of a million random keys do not collide") {
  SplitMix64 rng(99);
  std::vector<std::uint64_t> keys(1'000'000);
  for (auto& k : keys) k = rng.next();
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<std::uint64_t> fps;
  fps.reserve(keys.size());
  for (Key k : keys) fps.push_back(fingerprint(k, 5));
  std::sort(fps.begin(), fps.end());
  const auto collisions = fps.size() - static_cast<std::size_t>(std::unique(fps.begin(), fps.end()) - fps.begin());
  CHECK(collisions <= 1);
}

TEST_CASE("logical clock ticks") {
  LogicalClock clock;
  CHECK(clock.tick() == 1);
  const auto t = clock.tick();
  CHECK(clock.tick() == t + 1);
}

TEST_CASE("concurrent ticks are all distinct") {
  LogicalClock clock;
  std::vector<std::vector<LogicalTime>> seen(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      for (int i = 0; i < 1000; ++i) seen[t].push_back(clock.tick());
    });
  for (auto& th : threads) th.join();
  CHECK(clock.now() == 4000);
  std::vector<LogicalTime> all;
  for (auto& v : seen) {
    CHECK(std::is_sorted(v.begin(), v.end()));
    all.insert(all.end(), v.begin(), v.end());
  }
  std::sort(all.begin(), all.end());
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("capacity rounds up to a power-of-two set count") {
  const auto fig = CacheConfig::make(48, 6);
  CHECK(fig.num_sets() == 8);
  CHECK(fig.capacity == 48);

  for (std::size_t c : {1u, 3u, 7u, 100u, 1000u, 4097u, 200000u})
    for (std::size_t k : {1u, 2u, 3u, 6u, 8u, 64u}) {
      if (k > c) continue;
      const auto cfg = CacheConfig::make(c, k);
      CHECK(cfg.capacity >= c);
      CHECK(cfg.capacity % k == 0);
      CHECK(is_power_of_two(cfg.num_sets()));
      // Smallest such capacity.
      if (cfg.num_sets() > 1) CHECK((cfg.num_sets() / 2) * k < c);
    }

  CHECK_THROWS_AS(CacheConfig::make(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(CacheConfig::make(8, 0), std::invalid_argument);
  CHECK_THROWS_AS(CacheConfig::make(4, 8), std::invalid_argument);
}

TEST_CASE("set occupancy is balanced") {
  const std::size_t sets = 1024;
  std::vector<std::size_t> load(sets);
  SplitMix64 rng(17);
  const std::size_t n = 1'000'000;
  for (std::size_t i = 0; i < n; ++i) ++load[set_index(rng.next(), sets, 0x1234)];
  const double mean = static_cast<double>(n) / sets;
  const auto max = *std::max_element(load.begin(), load.end());
  CHECK(static_cast<double>(max) / mean < 1.5);
}

TEST_CASE("policy and variant names round trip") {
  for (auto p : {Policy::kLru, Policy::kLfu, Policy::kFifo, Policy::kRandom, Policy::kHyperbolic})
    CHECK(parse_policy(to_string(p)) == p);
  for (auto v : {Variant::kWfa, Variant::kWfsc, Variant::kLs, Variant::kSt})
    CHECK(parse_variant(to_string(v)) == v);
  CHECK(parse_policy("LRU") == Policy::kLru);
  CHECK_THROWS_AS(parse_policy("arc"), std::invalid_argument);
}

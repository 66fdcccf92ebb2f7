#include <doctest.h>

#include <algorithm>
#include <map>
#include <thread>
#include <vector>

#include "kway/frequency_sketch.hpp"

using namespace kway;

TEST_CASE("for_capacity sizing") {
  const auto s = FrequencySketch::for_capacity(1000);
  CHECK(s.width() == 1024);
  CHECK(s.depth() == 4);
  CHECK(s.sample_period() == 10000);
}

TEST_CASE("record and estimate on a fresh sketch") {
  auto s = FrequencySketch::for_capacity(1024);
  CHECK(s.estimate(77) == 0);
  for (int i = 0; i < 3; ++i) s.record(77);
  CHECK(s.estimate(77) == 3);
  for (int i = 0; i < 20; ++i) s.record(78);
  CHECK(s.estimate(78) == 15);
}

TEST_CASE("the sample period triggers a halving reset") {
  FrequencySketch s(64, 4, 100);
  for (int i = 0; i < 99; ++i) s.record(5);
  CHECK(s.op_count() == 99);
  CHECK(s.estimate(5) == 15);
  s.record(5);
  CHECK(s.op_count() == 0);
  CHECK(s.estimate(5) == 7);
}

TEST_CASE("reset halves each counter") {
  FrequencySketch s(16, 1, 1'000'000);
  const Key a = 1, b = 2;
  for (int i = 0; i < 15; ++i) s.record(a);
  s.record(b);
  const auto ca = s.column(0, a), cb = s.column(0, b);
  const auto before_a = s.counter(0, ca), before_b = s.counter(0, cb);
  s.reset();
  CHECK(s.counter(0, ca) == before_a / 2);
  CHECK(s.counter(0, cb) == before_b / 2);

  FrequencySketch zero(16, 4, 10);
  zero.reset();
  zero.reset();
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 16; ++c) CHECK(zero.counter(r, c) == 0);
}

TEST_CASE("mini sketch never undercounts exact frequencies") {
  // Brute-force oracle: exact per-key counts against a 2-row x 4-counter sketch
  // where collisions are guaranteed.
  SplitMix64 rng(2024);
  for (int seq = 0; seq < 100; ++seq) {
    FrequencySketch s(4, 2, 1'000'000, rng.next());
    std::map<Key, std::uint32_t> exact;
    const int len = 1 + static_cast<int>(rng.below(60));
    for (int i = 0; i < len; ++i) {
      const Key k = rng.below(12);
      s.record(k);
      ++exact[k];
      for (const auto& [key, count] : exact)
        REQUIRE(s.estimate(key) >= std::min<std::uint32_t>(15, count));
    }
  }
}

TEST_CASE("admit requires strictly higher frequency") {
  auto s = FrequencySketch::for_capacity(4096);
  CHECK_FALSE(s.admit(1, 2));
  for (int i = 0; i < 5; ++i) s.record(10);
  for (int i = 0; i < 3; ++i) s.record(20);
  CHECK(s.admit(10, 20));
  CHECK_FALSE(s.admit(20, 10));
  for (int i = 0; i < 2; ++i) s.record(20);
  CHECK(s.estimate(10) == s.estimate(20));
  CHECK_FALSE(s.admit(10, 20));
  CHECK_FALSE(s.admit(20, 10));
}

TEST_CASE("admit is antisymmetric") {
  auto s = FrequencySketch::for_capacity(256);
  SplitMix64 rng(8);
  for (int i = 0; i < 2000; ++i) s.record(rng.below(300));
  for (Key a = 0; a < 50; ++a)
    for (Key b = 0; b < 50; ++b) CHECK_FALSE((s.admit(a, b) && s.admit(b, a)));
}

TEST_CASE("concurrent records stay within bounds") {
  auto s = FrequencySketch::for_capacity(1 << 12);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      SplitMix64 rng(t);
      for (int i = 0; i < 20000; ++i) s.record(rng.below(64));
    });
  for (auto& th : threads) th.join();
  for (Key k = 0; k < 64; ++k) CHECK(s.estimate(k) <= 15);
  CHECK(s.op_count() < s.sample_period());
}

TEST_CASE("invalid shapes are rejected") {
  CHECK_THROWS_AS(FrequencySketch(12, 4, 10), std::invalid_argument);
  CHECK_THROWS_AS(FrequencySketch(16, 0, 10), std::invalid_argument);
  CHECK_THROWS_AS(FrequencySketch(16, 4, 0), std::invalid_argument);
}

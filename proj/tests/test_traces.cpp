#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "kway/kway_cache.hpp"
#include "kway/sim.hpp"
#include "kway/traces.hpp"

using namespace kway;

namespace {
KeyStream plain(const std::string& text) {
  std::istringstream in(text);
  return parse_plain(in);
}
KeyStream arc(const std::string& text) {
  std::istringstream in(text);
  return parse_arc_blocks(in);
}
KeyStream spc(const std::string& text) {
  std::istringstream in(text);
  return parse_spc(in);
}
}  // namespace

TEST_CASE("plain format") {
  CHECK(plain("1\n2\n1\n").keys == std::vector<Key>{1, 2, 1});
  CHECK(plain("# c\n\n7\n").keys == std::vector<Key>{7});
  CHECK(plain("  12 extra tokens\n").keys == std::vector<Key>{12});
  const auto s = plain("alpha\nalpha\nbeta\n");
  CHECK(s.keys[0] == hash_string("alpha"));
  CHECK(s.keys[1] == s.keys[0]);
  CHECK(s.keys[2] == hash_string("beta"));
  CHECK(s.keys[2] != s.keys[0]);
  CHECK(plain("-5\n").keys[0] == hash_string("-5"));
  CHECK_THROWS_AS(plain("# only a comment\n\n"), TraceError);
}

TEST_CASE("plain format round trips") {
  SyntheticSpec spec;
  spec.universe = 1000;
  spec.requests = 5000;
  const auto s = gen_zipf(spec);
  std::ostringstream out;
  write_plain(s, out);
  std::istringstream in(out.str());
  CHECK(parse_plain(in).keys == s.keys);
}

TEST_CASE("ARC block format expands block runs") {
  CHECK(arc("100 3 x y\n").keys == std::vector<Key>{100, 101, 102});
  CHECK(arc("5 1 a b\n5 1 a b\n").keys == std::vector<Key>{5, 5});
  CHECK(arc("10 4 0 0\n20 6 0 0\n").size() == 10);
  try {
    arc("1 2 0 0\nbogus line\n");
    FAIL("expected a TraceError");
  } catch (const TraceError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("SPC format keys combine ASU and LBA") {
  CHECK(spc("0,42,512,r,0.1").keys == std::vector<Key>{42});
  CHECK(spc("1,42,512,r,0.1").keys == std::vector<Key>{(Key{1} << 48) ^ 42});
  CHECK(spc("0,3,512,w,0.1\n0,1,512,r,0.2\n0,2,4096,r,0.3\n").keys == std::vector<Key>{3, 1, 2});
  CHECK_THROWS_AS(spc("0,42,512\n"), TraceError);
  CHECK_THROWS_AS(spc("x,42,512,r,0.1\n"), TraceError);
}

TEST_CASE("missing trace files are reported") {
  CHECK_THROWS_AS(load_trace("/nonexistent/trace.txt", TraceFormat::kPlain), TraceError);
}

TEST_CASE("zipf with a vanishing exponent is uniform") {
  SyntheticSpec spec;
  spec.universe = 16;
  spec.requests = 100000;
  spec.alpha = 1e-9;
  const auto s = gen_zipf(spec);
  std::vector<double> counts(16);
  for (Key k : s.keys) counts[k] += 1;
  const double expected = 100000.0 / 16;
  const double sigma = std::sqrt(100000.0 * (1.0 / 16) * (15.0 / 16));
  double chi2 = 0;
  for (double c : counts) {
    CHECK(std::abs(c - expected) <= 3 * sigma);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 15 degrees of freedom; 99.9th percentile is about 37.7.
  CHECK(chi2 < 37.7);
}

TEST_CASE("zipf with exponent one over two ranks") {
  SyntheticSpec spec;
  spec.universe = 2;
  spec.requests = 300000;
  spec.alpha = 1.0;
  const auto s = gen_zipf(spec);
  const auto first = static_cast<double>(std::count(s.keys.begin(), s.keys.end(), s.keys[0]));
  const double p_top = std::max(first, 300000 - first) / 300000;
  CHECK(p_top == doctest::Approx(2.0 / 3.0).epsilon(0.01));
}

TEST_CASE("zipf is deterministic per seed") {
  SyntheticSpec spec;
  spec.universe = 100;
  spec.requests = 1000;
  CHECK(gen_zipf(spec) == gen_zipf(spec));
  auto other = spec;
  other.seed = 2;
  CHECK(gen_zipf(other).keys != gen_zipf(spec).keys);
  spec.alpha = 0;
  CHECK_THROWS_AS(gen_zipf(spec), std::invalid_argument);
}

TEST_CASE("fixed-hit scripts") {
  const auto cfg = CacheConfig::make(1024, 8);
  SyntheticSpec spec;
  spec.requests = 10;
  spec.mode = SyntheticMode::kMiss100;
  auto miss = gen_fixed_hit(spec, cfg);
  std::set<Key> distinct;
  for (const auto& s : miss.steps) distinct.insert(s.key);
  CHECK(distinct.size() == 10);
  CHECK(miss.fresh_count() == 10);

  spec.requests = 2000;
  spec.mode = SyntheticMode::kHit95;
  const auto hit95 = gen_fixed_hit(spec, cfg);
  CHECK(hit95.fresh_count() == 100);
  const std::set<Key> resident(hit95.resident.begin(), hit95.resident.end());
  for (const auto& s : hit95.steps) CHECK(resident.count(s.key) == (s.put_on_miss ? 0u : 1u));

  spec.mode = SyntheticMode::kHit90;
  CHECK(gen_fixed_hit(spec, cfg).fresh_count() == 200);

  spec.mode = SyntheticMode::kHit100;
  const auto hit100 = gen_fixed_hit(spec, cfg);
  CHECK(hit100.fresh_count() == 0);
  CHECK(hit100.resident.size() <= cfg.capacity);
}

TEST_CASE("fixed-hit scripts replay at their nominal hit ratios") {
  const auto cfg = CacheConfig::make(1024, 8);
  SyntheticSpec spec;
  spec.requests = 20000;
  const std::pair<SyntheticMode, double> expected[] = {{SyntheticMode::kMiss100, 0.0},
                                                       {SyntheticMode::kHit100, 1.0},
                                                       {SyntheticMode::kHit95, 0.95},
                                                       {SyntheticMode::kHit90, 0.90}};
  for (auto [mode, ratio] : expected) {
    spec.mode = mode;
    StCache cache(cfg);
    const auto m = replay(cache, gen_fixed_hit(spec, cfg));
    CHECK(m.hit_ratio() == doctest::Approx(ratio).epsilon(0.01));
  }
}

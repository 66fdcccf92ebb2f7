#include "kway/sim.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "kway/baselines.hpp"
#include "kway/kway_cache.hpp"

namespace kway {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

RunMetrics replay(Cache& cache, const KeyStream& stream) {
  if (stream.keys.empty()) throw std::invalid_argument("cannot replay an empty stream");
  RunMetrics m;
  const auto start = Clock::now();
  for (Key k : stream.keys) {
    if (cache.get(k)) {
      ++m.hits;
    } else {
      ++m.misses;
      cache.put(k, value_for(k));
    }
  }
  m.wall_seconds = seconds_since(start);
  return m;
}

RunMetrics replay(Cache& cache, const RequestScript& script) {
  if (script.steps.empty()) throw std::invalid_argument("cannot replay an empty script");
  for (Key k : script.resident) cache.put(k, value_for(k), PutMode::kForce);
  RunMetrics m;
  const auto start = Clock::now();
  for (const ScriptStep& step : script.steps) {
    if (cache.get(step.key)) {
      ++m.hits;
    } else {
      ++m.misses;
      if (step.put_on_miss) cache.put(step.key, value_for(step.key));
    }
  }
  m.wall_seconds = seconds_since(start);
  return m;
}

RunMetrics run_hit_ratio(CacheConfig config, const KeyStream& stream) {
  config.variant = Variant::kSt;
  StCache cache(config);
  return replay(cache, stream);
}

std::vector<SweepRow> sweep_associativity(const CacheConfig& base, const KeyStream& stream,
                                          const std::vector<std::size_t>& ways_list,
                                          const std::vector<std::size_t>& sample_sizes) {
  std::vector<SweepRow> rows;
  for (std::size_t ways : ways_list) {
    const CacheConfig c = CacheConfig::make(base.capacity, ways, base.policy, Variant::kSt,
                                            base.admission, base.hash_seed);
    StCache cache(c);
    rows.push_back({"kway-" + std::to_string(ways), CacheKind::kKWay, ways, c.capacity,
                    replay(cache, stream)});
  }
  for (std::size_t sample : sample_sizes) {
    SampledCache cache(base.capacity, sample, base.policy, base.admission, base.hash_seed);
    rows.push_back({"sampled-" + std::to_string(sample), CacheKind::kSampled, sample,
                    base.capacity, replay(cache, stream)});
  }
  FullyAssociativeCache fa(base.capacity, base.policy, base.admission, base.hash_seed);
  rows.push_back({"fa", CacheKind::kFullyAssociative, base.capacity, base.capacity,
                  replay(fa, stream)});
  return rows;
}

BallsInBinsResult balls_in_bins(std::size_t slots, std::size_t ways, std::size_t items,
                                std::size_t trials, std::uint64_t seed, std::uint64_t hash_seed) {
  if (ways == 0 || slots == 0 || slots % ways != 0)
    throw std::invalid_argument("slots must be a positive multiple of ways");
  if (items > slots) throw std::invalid_argument("items exceed slots");
  if (trials == 0) throw std::invalid_argument("trials must be positive");

  const std::size_t sets = slots / ways;
  const bool pow2 = is_power_of_two(sets);
  std::vector<std::uint32_t> load(sets);
  BallsInBinsResult result{slots, ways, sets, items, trials, 0};

  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 rng(mix64(seed + t));
    std::fill(load.begin(), load.end(), 0);
    bool ok = true;
    for (std::size_t i = 0; i < items && ok; ++i) {
      const Key key = rng.next();
      const std::size_t bin =
          pow2 ? set_index(key, sets, hash_seed)
               : static_cast<std::size_t>(
                     (static_cast<unsigned __int128>(hash64(key, hash_seed)) * sets) >> 64);
      ok = ++load[bin] <= ways;
    }
    if (ok) ++result.successes;
  }
  return result;
}

double theorem_failure_bound(std::size_t slots, std::size_t items, std::size_t ways) {
  if (ways == 0) throw std::invalid_argument("ways must be positive");
  if (slots < 2 * items) throw std::invalid_argument("bound requires slots >= 2 * items");
  return static_cast<double>(slots) / static_cast<double>(ways) *
         std::exp(-static_cast<double>(ways) / 6.0);
}

}  // namespace kway

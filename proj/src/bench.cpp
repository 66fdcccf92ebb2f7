#include "kway/bench.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <pthread.h>
#include <sched.h>

#include "kway/baselines.hpp"
#include "kway/kway_cache.hpp"

namespace kway {
namespace {

constexpr Key kWarmBase = 0xC000'0000'0000'0000ULL;
constexpr Key kMissBase = 0x2000'0000'0000'0000ULL;
constexpr Key kFreshBase = 0xA000'0000'0000'0000ULL;
constexpr std::size_t kStopCheckInterval = 64;

struct alignas(64) ThreadCounters {
  std::uint64_t gets = 0;
  std::uint64_t puts = 0;
  std::uint64_t hits = 0;
};

void pin_to_cpu(std::size_t thread) {
  const unsigned cpus = std::max(1u, std::thread::hardware_concurrency());
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(thread % cpus, &set);
  pthread_setaffinity_np(pthread_self(), sizeof(set), &set);
}

bool is_fixed_hit(const BenchPlan& plan) {
  return plan.synthetic && plan.synthetic->mode != SyntheticMode::kZipf &&
         plan.synthetic->mode != SyntheticMode::kMiss100;
}

bool is_generated_miss(const BenchPlan& plan) {
  return plan.synthetic && plan.synthetic->mode == SyntheticMode::kMiss100;
}

/// Per-thread slices of the shared step list.
struct Workload {
  RequestScript script;

  static Workload from(const BenchPlan& plan) {
    Workload w;
    if (is_fixed_hit(plan)) {
      w.script = gen_fixed_hit(*plan.synthetic, plan.config);
    } else if (plan.synthetic && plan.synthetic->mode == SyntheticMode::kZipf) {
      w.script.steps = to_steps(gen_zipf(*plan.synthetic));
    } else if (!plan.synthetic) {
      w.script.steps = to_steps(plan.stream);
    }
    return w;
  }
};

}  // namespace

double BenchResult::mean_ops_per_sec() const noexcept {
  if (ops_per_sec.empty()) return 0.0;
  return std::accumulate(ops_per_sec.begin(), ops_per_sec.end(), 0.0) /
         static_cast<double>(ops_per_sec.size());
}

void validate(const BenchPlan& plan) {
  if (plan.threads == 0) throw std::invalid_argument("threads must be at least 1");
  if (plan.repeats == 0) throw std::invalid_argument("repeats must be at least 1");
  if (!(plan.duration_secs > 0)) throw std::invalid_argument("duration must be positive");
  if (!plan.synthetic && plan.stream.keys.empty())
    throw std::invalid_argument("throughput plan needs a trace or a synthetic workload");
  if (plan.target == BenchTarget::kLockedSampled &&
      (plan.sample_size == 0 || plan.sample_size > plan.config.capacity))
    throw std::invalid_argument("sample size must be in [1, capacity]");
}

std::unique_ptr<Cache> make_bench_cache(const BenchPlan& plan) {
  const CacheConfig& c = plan.config;
  switch (plan.target) {
    case BenchTarget::kKWay:
      return make_cache(c);
    case BenchTarget::kLockedFullyAssociative:
      return std::make_unique<GlobalLockCache>(
          std::make_unique<FullyAssociativeCache>(c.capacity, c.policy, c.admission, c.hash_seed));
    case BenchTarget::kLockedSampled:
      return std::make_unique<GlobalLockCache>(std::make_unique<SampledCache>(
          c.capacity, plan.sample_size, c.policy, c.admission, c.hash_seed));
  }
  throw std::invalid_argument("unknown bench target");
}

std::string target_label(const BenchPlan& plan) {
  switch (plan.target) {
    case BenchTarget::kKWay: return std::string(to_string(plan.config.variant));
    case BenchTarget::kLockedFullyAssociative: return "fa";
    case BenchTarget::kLockedSampled: return "sampled-" + std::to_string(plan.sample_size);
  }
  return "?";
}

WarmupKeys::WarmupKeys(const BenchPlan& plan) : plan_(plan) {
  if (!plan.synthetic) {
    avoid_ = plan.stream.keys;
    std::sort(avoid_.begin(), avoid_.end());
    avoid_.erase(std::unique(avoid_.begin(), avoid_.end()), avoid_.end());
  }
}

bool WarmupKeys::usable(Key k) const { return !std::binary_search(avoid_.begin(), avoid_.end(), k); }

std::vector<Key> WarmupKeys::filling(std::size_t capacity) const {
  std::vector<Key> out;
  out.reserve(capacity);
  if (plan_.target != BenchTarget::kKWay) {
    for (Key k = kWarmBase; out.size() < capacity; ++k)
      if (usable(k)) out.push_back(k);
    return out;
  }
  const CacheConfig& c = plan_.config;
  std::vector<std::size_t> fill(c.num_sets(), 0);
  for (Key k = kWarmBase; out.size() < c.capacity; ++k) {
    if (!usable(k)) continue;
    std::size_t& n = fill[set_index(k, c)];
    if (n < c.ways) {
      ++n;
      out.push_back(k);
    }
  }
  return out;
}

std::vector<Key> WarmupKeys::for_thread(std::size_t thread, std::size_t count) const {
  std::vector<Key> out;
  out.reserve(count);
  for (Key k = kWarmBase + (Key{thread + 1} << 40); out.size() < count; ++k)
    if (usable(k)) out.push_back(k);
  return out;
}

void warm_up(Cache& cache, const BenchPlan& plan) {
  if (is_fixed_hit(plan)) {
    for (Key k : gen_fixed_hit(*plan.synthetic, plan.config).resident)
      cache.put(k, value_for(k), PutMode::kForce);
    return;
  }
  for (Key k : WarmupKeys(plan).filling(cache.capacity())) cache.put(k, value_for(k), PutMode::kForce);
}

BenchResult run_throughput(const BenchPlan& plan) {
  validate(plan);
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw != 0 && plan.threads > hw)
    std::cerr << "warning: " << plan.threads << " threads exceed " << hw
              << " hardware threads\n";

  const Workload workload = Workload::from(plan);
  const auto& steps = workload.script.steps;
  const WarmupKeys warm_keys(plan);
  const bool generated_miss = is_generated_miss(plan);
  const bool fixed_hit = is_fixed_hit(plan);
  const std::size_t resident_sets = plan.config.num_sets() / 2;
  const bool fresh_sets_only = plan.target == BenchTarget::kKWay && resident_sets > 0;

  BenchResult result;
  result.variant = target_label(plan);
  result.policy = plan.config.policy;
  result.ways = plan.target == BenchTarget::kKWay ? plan.config.ways : 0;
  result.capacity = plan.config.capacity;
  result.threads = plan.threads;

  for (std::size_t repeat = 0; repeat < plan.repeats; ++repeat) {
    std::unique_ptr<Cache> cache = make_bench_cache(plan);
    warm_up(*cache, plan);

    std::vector<ThreadCounters> counters(plan.threads);
    std::atomic<bool> stop{false};
    std::barrier start_line(static_cast<std::ptrdiff_t>(plan.threads + 1));
    const std::size_t per_thread_warm = fixed_hit ? 0 : cache->capacity() / plan.threads;

    auto worker = [&](std::size_t t) {
      if (plan.pin_threads) pin_to_cpu(t);
      for (Key k : warm_keys.for_thread(t, per_thread_warm)) cache->put(k, value_for(k), PutMode::kForce);
      start_line.arrive_and_wait();

      ThreadCounters local;
      if (generated_miss) {
        Key next = kMissBase + (Key{t} << 44);
        while (!stop.load(std::memory_order_relaxed)) {
          for (std::size_t i = 0; i < kStopCheckInterval; ++i) {
            const Key k = next++;
            ++local.gets;
            if (cache->get(k)) {
              ++local.hits;
            } else {
              cache->put(k, value_for(k));
              ++local.puts;
            }
          }
        }
      } else {
        const std::size_t begin = t * steps.size() / plan.threads;
        std::size_t end = (t + 1) * steps.size() / plan.threads;
        if (end == begin) end = begin + 1;
        std::size_t pos = begin;
        // Scripted fresh keys would repeat once the slice wraps; fixed-hit
        // runs draw never-seen keys from the script's fresh sets instead.
        Key next_fresh = kFreshBase + (Key{t} << 44);
        auto fresh = [&] {
          for (;;) {
            const Key k = next_fresh++;
            if (!fresh_sets_only || set_index(k, plan.config) >= resident_sets) return k;
          }
        };
        while (!stop.load(std::memory_order_relaxed)) {
          for (std::size_t i = 0; i < kStopCheckInterval; ++i) {
            const ScriptStep& step = steps[pos];
            if (++pos == end) pos = begin;
            const Key key = fixed_hit && step.put_on_miss ? fresh() : step.key;
            ++local.gets;
            if (cache->get(key)) {
              ++local.hits;
            } else if (step.put_on_miss) {
              cache->put(key, value_for(key));
              ++local.puts;
            }
          }
        }
      }
      counters[t] = local;
    };

    std::vector<std::thread> pool;
    pool.reserve(plan.threads);
    for (std::size_t t = 0; t < plan.threads; ++t) pool.emplace_back(worker, t);
    start_line.arrive_and_wait();
    const auto start = std::chrono::steady_clock::now();
    std::this_thread::sleep_for(std::chrono::duration<double>(plan.duration_secs));
    stop.store(true, std::memory_order_relaxed);
    for (auto& th : pool) th.join();
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::uint64_t ops = 0;
    for (const ThreadCounters& c : counters) {
      ops += c.gets + c.puts;
      result.gets += c.gets;
      result.puts += c.puts;
      result.hits += c.hits;
      result.misses += c.gets - c.hits;
    }
    result.ops_per_sec.push_back(static_cast<double>(ops) / elapsed);
  }
  return result;
}

}  // namespace kway

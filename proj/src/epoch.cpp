#include "kway/epoch.hpp"

#include <array>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace kway::epoch {
namespace {

constexpr std::size_t kMaxThreads = 512;
constexpr std::size_t kScanInterval = 64;

struct Retired {
  void* ptr;
  Deleter deleter;
  std::uint64_t epoch;
};

// state: 0 when quiescent, (epoch << 1) | 1 while pinned.
struct alignas(64) Record {
  std::atomic<std::uint64_t> state{0};
  std::atomic<bool> claimed{false};
};

class Domain {
 public:
  static Domain& instance() {
    static Domain domain;
    return domain;
  }

  ~Domain() {
    for (const Retired& r : orphans_) r.deleter(r.ptr);
  }

  std::atomic<std::uint64_t> global{2};
  std::atomic<std::uint64_t> pending{0};
  std::array<Record, kMaxThreads> records;

  std::size_t claim() {
    for (std::size_t i = 0; i < kMaxThreads; ++i) {
      bool expected = false;
      if (!records[i].claimed.load(std::memory_order_relaxed) &&
          records[i].claimed.compare_exchange_strong(expected, true))
        return i;
    }
    // Too many concurrently live threads for the registry.
    std::abort();
  }

  void try_advance() noexcept {
    const std::uint64_t e = global.load();
    for (const Record& r : records) {
      if (!r.claimed.load(std::memory_order_relaxed)) continue;
      const std::uint64_t s = r.state.load();
      if ((s & 1) && (s >> 1) != e) return;
    }
    std::uint64_t expected = e;
    global.compare_exchange_strong(expected, e + 1);
  }

  void adopt(std::vector<Retired>&& leftovers) {
    std::lock_guard lock(orphan_mutex_);
    orphans_.insert(orphans_.end(), leftovers.begin(), leftovers.end());
  }

  void free_orphans(std::uint64_t safe_epoch) noexcept {
    std::unique_lock lock(orphan_mutex_, std::try_to_lock);
    if (!lock.owns_lock()) return;
    std::size_t kept = 0;
    for (const Retired& r : orphans_) {
      if (r.epoch <= safe_epoch) {
        r.deleter(r.ptr);
        pending.fetch_sub(1, std::memory_order_relaxed);
      } else {
        orphans_[kept++] = r;
      }
    }
    orphans_.resize(kept);
  }

 private:
  std::mutex orphan_mutex_;
  std::vector<Retired> orphans_;
};

struct ThreadState {
  Domain& domain = Domain::instance();
  std::size_t index = domain.claim();
  unsigned nesting = 0;
  std::vector<Retired> limbo;
  std::size_t since_scan = 0;

  ~ThreadState() {
    domain.records[index].state.store(0);
    if (!limbo.empty()) domain.adopt(std::move(limbo));
    domain.records[index].claimed.store(false);
  }

  void free_safe() noexcept {
    const std::uint64_t e = domain.global.load();
    const std::uint64_t safe = e - 2;
    std::size_t kept = 0;
    for (const Retired& r : limbo) {
      if (r.epoch <= safe) {
        r.deleter(r.ptr);
        domain.pending.fetch_sub(1, std::memory_order_relaxed);
      } else {
        limbo[kept++] = r;
      }
    }
    limbo.resize(kept);
    domain.free_orphans(safe);
  }
};

ThreadState& local() {
  thread_local ThreadState state;
  return state;
}

}  // namespace

Guard::Guard() noexcept {
  ThreadState& t = local();
  if (t.nesting++ == 0) {
    const std::uint64_t e = t.domain.global.load();
    t.domain.records[t.index].state.store((e << 1) | 1);
  }
}

Guard::~Guard() {
  ThreadState& t = local();
  if (--t.nesting == 0) t.domain.records[t.index].state.store(0, std::memory_order_release);
}

void retire(void* ptr, Deleter deleter) noexcept {
  ThreadState& t = local();
  t.limbo.push_back({ptr, deleter, t.domain.global.load()});
  t.domain.pending.fetch_add(1, std::memory_order_relaxed);
  if (++t.since_scan >= kScanInterval) {
    t.since_scan = 0;
    t.domain.try_advance();
    t.free_safe();
  }
}

std::uint64_t pending() noexcept { return Domain::instance().pending.load(); }

void collect() noexcept {
  ThreadState& t = local();
  for (int i = 0; i < 3; ++i) t.domain.try_advance();
  t.free_safe();
}

}  // namespace kway::epoch

#pragma once

#include <cstdint>

namespace kway::epoch {

/// Epoch-based memory reclamation shared by every wait-free cache in the
/// process.
///
/// A thread holds a Guard while it dereferences slot pointers. A node that has
/// been unlinked is passed to retire() and freed once the global epoch has
/// advanced twice past the epoch observed at retirement, at which point no
/// guard that could have seen it is still live. Pinning and unpinning are a
/// handful of stores; reclamation work is amortized over retirements.
class Guard {
 public:
  Guard() noexcept;
  ~Guard();
  Guard(const Guard&) = delete;
  Guard& operator=(const Guard&) = delete;
};

using Deleter = void (*)(void*);

void retire(void* ptr, Deleter deleter) noexcept;

template <class T>
void retire(T* ptr) noexcept {
  retire(static_cast<void*>(ptr), [](void* p) { delete static_cast<T*>(p); });
}

/// Number of retired objects not yet freed, across all threads. Diagnostic.
std::uint64_t pending() noexcept;

/// Attempts to advance the epoch and free everything that became safe.
/// Intended for quiescent points (tests, shutdown).
void collect() noexcept;

}  // namespace kway::epoch

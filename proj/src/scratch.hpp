#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace kway::detail {

/// Fixed-size scratch array on the stack, spilling to the heap for very
/// wide sets.
template <class T, std::size_t N = 256>
class Scratch {
 public:
  explicit Scratch(std::size_t n) {
    if (n <= N) {
      view_ = std::span<T>(inline_.data(), n);
    } else {
      heap_.resize(n);
      view_ = heap_;
    }
  }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;

  std::span<T> span() noexcept { return view_; }
  T& operator[](std::size_t i) noexcept { return view_[i]; }

 private:
  std::array<T, N> inline_;
  std::vector<T> heap_;
  std::span<T> view_;
};

}  // namespace kway::detail

#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "kway/hash.hpp"

namespace kway {

/// Count-min sketch of 4-bit saturating counters with periodic halving.
///
/// Counters are packed sixteen to a 64-bit word. Each row owns a contiguous run
/// of words. Increments are compare-and-exchange on the word with at most
/// three attempts; an increment that loses three races is dropped. All
/// operations are safe to call concurrently.
class FrequencySketch {
 public:
  static constexpr std::uint32_t kMaxCount = 15;
  static constexpr std::size_t kDefaultDepth = 4;

  /// `width` must be a power of two, `depth` and `sample_period` positive.
  FrequencySketch(std::size_t width, std::size_t depth, std::uint64_t sample_period,
                  std::uint64_t seed = 0x2545F4914F6CDD1DULL);

  /// Sized for a cache: width = next power of two >= capacity, depth 4,
  /// sample period 10 x capacity.
  static FrequencySketch for_capacity(std::size_t capacity,
                                      std::uint64_t seed = 0x2545F4914F6CDD1DULL);

  FrequencySketch(FrequencySketch&&) noexcept = default;
  FrequencySketch& operator=(FrequencySketch&&) noexcept = default;

  void record(Key key) noexcept;
  std::uint32_t estimate(Key key) const noexcept;
  /// Halves every counter and clears the operation count.
  void reset() noexcept;
  /// Candidate displaces the victim only if strictly more frequent.
  bool admit(Key candidate, Key victim) const noexcept {
    return estimate(candidate) > estimate(victim);
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t depth() const noexcept { return depth_; }
  std::uint64_t sample_period() const noexcept { return sample_period_; }
  std::uint64_t op_count() const noexcept { return op_count_->load(std::memory_order_relaxed); }

  /// Raw counter value, for diagnostics and tests.
  std::uint32_t counter(std::size_t row, std::size_t column) const noexcept;
  /// Column hit by `key` in `row`.
  std::size_t column(std::size_t row, Key key) const noexcept;

 private:
  struct Cell {
    std::size_t word;
    unsigned shift;
  };
  Cell locate(std::size_t row, std::size_t column) const noexcept;

  std::size_t width_;
  std::size_t depth_;
  std::size_t words_per_row_;
  std::uint64_t sample_period_;
  std::vector<std::uint64_t> seeds_;
  std::unique_ptr<std::atomic<std::uint64_t>[]> words_;
  std::unique_ptr<std::atomic<std::uint64_t>> op_count_;
};

}  // namespace kway

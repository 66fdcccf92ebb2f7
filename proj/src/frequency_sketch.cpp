#include "kway/frequency_sketch.hpp"

#include <algorithm>
#include <stdexcept>

#include "kway/config.hpp"

namespace kway {
namespace {
constexpr std::size_t kCountersPerWord = 16;
constexpr std::uint64_t kHalveMask = 0x7777777777777777ULL;
constexpr int kMaxIncrementAttempts = 3;
}  // namespace

FrequencySketch::FrequencySketch(std::size_t width, std::size_t depth,
                                 std::uint64_t sample_period, std::uint64_t seed)
    : width_(width),
      depth_(depth),
      words_per_row_((width + kCountersPerWord - 1) / kCountersPerWord),
      sample_period_(sample_period),
      op_count_(std::make_unique<std::atomic<std::uint64_t>>(0)) {
  if (!is_power_of_two(width)) throw std::invalid_argument("sketch width must be a power of two");
  if (depth == 0) throw std::invalid_argument("sketch depth must be positive");
  if (sample_period == 0) throw std::invalid_argument("sketch sample period must be positive");
  SplitMix64 rng(seed);
  seeds_.resize(depth_);
  for (auto& s : seeds_) s = rng.next();
  const std::size_t n = words_per_row_ * depth_;
  words_ = std::make_unique<std::atomic<std::uint64_t>[]>(n);
  for (std::size_t i = 0; i < n; ++i) words_[i].store(0, std::memory_order_relaxed);
}

FrequencySketch FrequencySketch::for_capacity(std::size_t capacity, std::uint64_t seed) {
  const std::size_t c = std::max<std::size_t>(capacity, 1);
  return FrequencySketch(next_power_of_two(c), kDefaultDepth, 10 * static_cast<std::uint64_t>(c),
                         seed);
}

std::size_t FrequencySketch::column(std::size_t row, Key key) const noexcept {
  return static_cast<std::size_t>(hash64(key, seeds_[row]) & (width_ - 1));
}

FrequencySketch::Cell FrequencySketch::locate(std::size_t row, std::size_t column) const noexcept {
  return {row * words_per_row_ + column / kCountersPerWord,
          static_cast<unsigned>((column % kCountersPerWord) * 4)};
}

std::uint32_t FrequencySketch::counter(std::size_t row, std::size_t column) const noexcept {
  const Cell cell = locate(row, column);
  return static_cast<std::uint32_t>((words_[cell.word].load(std::memory_order_relaxed) >> cell.shift) & 0xF);
}

void FrequencySketch::record(Key key) noexcept {
  for (std::size_t row = 0; row < depth_; ++row) {
    const Cell cell = locate(row, column(row, key));
    auto& word = words_[cell.word];
    std::uint64_t observed = word.load(std::memory_order_relaxed);
    for (int attempt = 0; attempt < kMaxIncrementAttempts; ++attempt) {
      if (((observed >> cell.shift) & 0xF) == kMaxCount) break;
      if (word.compare_exchange_strong(observed, observed + (std::uint64_t{1} << cell.shift),
                                     std::memory_order_relaxed))
        break;
    }
  }
  if (op_count_->fetch_add(1, std::memory_order_relaxed) + 1 == sample_period_) reset();
}

std::uint32_t FrequencySketch::estimate(Key key) const noexcept {
  std::uint32_t best = kMaxCount;
  for (std::size_t row = 0; row < depth_; ++row)
    best = std::min(best, counter(row, column(row, key)));
  return best;
}

void FrequencySketch::reset() noexcept {
  const std::size_t n = words_per_row_ * depth_;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t observed = words_[i].load(std::memory_order_relaxed);
    while (!words_[i].compare_exchange_weak(observed, (observed >> 1) & kHalveMask,
                                            std::memory_order_relaxed)) {
    }
  }
  op_count_->store(0, std::memory_order_relaxed);
}

}  // namespace kway

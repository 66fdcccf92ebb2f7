#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kway/config.hpp"
#include "kway/hash.hpp"

namespace kway {

class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KeyStream {
  std::vector<Key> keys;
  std::string label;

  std::size_t size() const noexcept { return keys.size(); }
  friend bool operator==(const KeyStream&, const KeyStream&) = default;
};

enum class TraceFormat { kPlain, kArc, kSpc };

std::string_view to_string(TraceFormat f) noexcept;
TraceFormat parse_trace_format(std::string_view name);

/// One key per line: the first whitespace-delimited token. Decimal integers
/// are taken as-is, other tokens are hashed. Blank lines and lines starting
/// with '#' are skipped.
KeyStream parse_plain(std::istream& in, std::string label = "plain");

/// "start count x y" lines, each expanding to start, start+1, ..., start+count-1.
KeyStream parse_arc_blocks(std::istream& in, std::string label = "arc");

/// "asu,lba,size,opcode,timestamp[,...]" lines; key = (asu << 48) ^ lba.
KeyStream parse_spc(std::istream& in, std::string label = "spc");

/// Dispatches on format. Throws TraceError if the file cannot be read.
KeyStream load_trace(const std::string& path, TraceFormat format);

/// Writes keys one per line in plain format.
void write_plain(const KeyStream& stream, std::ostream& out);

enum class SyntheticMode { kMiss100, kHit100, kHit95, kHit90, kZipf };

std::string_view to_string(SyntheticMode m) noexcept;
SyntheticMode parse_synthetic_mode(std::string_view name);

struct SyntheticSpec {
  SyntheticMode mode = SyntheticMode::kZipf;
  std::size_t universe = 1 << 18;
  std::size_t requests = 1'000'000;
  double alpha = 1.0;
  std::uint64_t seed = 1;
};

/// i.i.d. draws with P(rank r) proportional to r^-alpha over `universe` ranks,
/// ranks mapped to a seeded permutation of the key ids 0..universe-1.
KeyStream gen_zipf(const SyntheticSpec& spec);

/// One request of a replay script: a get, followed by a put when the get
/// misses and `put_on_miss` is set.
struct ScriptStep {
  Key key;
  bool put_on_miss;
  friend bool operator==(const ScriptStep&, const ScriptStep&) = default;
};

/// Requests plus the keys that must be resident before replay starts.
struct RequestScript {
  std::vector<Key> resident;
  std::vector<ScriptStep> steps;

  std::size_t fresh_count() const noexcept;
};

/// Scripts with a fixed hit ratio (MISS100, HIT100, HIT95, HIT90).
///
/// The resident keys fill every way of the lower half of the sets of `cache`,
/// and fresh keys are drawn from a disjoint key range and only from keys that
/// address the upper half, so scripted misses never displace resident keys.
/// With a single set the two groups share it and the ratio is approximate.
RequestScript gen_fixed_hit(const SyntheticSpec& spec, const CacheConfig& cache);

/// Replay script for an ordinary trace: every request puts on miss.
std::vector<ScriptStep> to_steps(const KeyStream& stream);

}  // namespace kway

#include "kway/traces.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace kway {
namespace {

bool is_skippable(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#';
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_u64(std::string_view token, std::uint64_t& out) {
  if (token.empty()) return false;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

[[noreturn]] void malformed(std::string_view what, std::size_t line_no, std::string_view line) {
  throw TraceError(std::string(what) + ": malformed line " + std::to_string(line_no) + ": '" +
                   std::string(line) + "'");
}

void require_keys(const KeyStream& s) {
  if (s.keys.empty()) throw TraceError(s.label + ": trace contains no keys");
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string_view to_string(TraceFormat f) noexcept {
  switch (f) {
    case TraceFormat::kPlain: return "plain";
    case TraceFormat::kArc: return "arc";
    case TraceFormat::kSpc: return "spc";
  }
  return "?";
}

TraceFormat parse_trace_format(std::string_view name) {
  if (name == "plain") return TraceFormat::kPlain;
  if (name == "arc") return TraceFormat::kArc;
  if (name == "spc") return TraceFormat::kSpc;
  throw std::invalid_argument("unknown trace format: " + std::string(name));
}

KeyStream parse_plain(std::istream& in, std::string label) {
  KeyStream out{{}, std::move(label)};
  std::string line;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    const auto tokens = split_ws(line);
    std::uint64_t key = 0;
    out.keys.push_back(parse_u64(tokens.front(), key) ? key : hash_string(tokens.front()));
  }
  if (in.bad()) throw TraceError(out.label + ": read error");
  require_keys(out);
  return out;
}

KeyStream parse_arc_blocks(std::istream& in, std::string label) {
  KeyStream out{{}, std::move(label)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    const auto tokens = split_ws(line);
    std::uint64_t start = 0;
    std::uint64_t count = 0;
    if (tokens.size() < 2 || !parse_u64(tokens[0], start) || !parse_u64(tokens[1], count))
      malformed(out.label, line_no, line);
    for (std::uint64_t i = 0; i < count; ++i) out.keys.push_back(start + i);
  }
  if (in.bad()) throw TraceError(out.label + ": read error");
  require_keys(out);
  return out;
}

KeyStream parse_spc(std::istream& in, std::string label) {
  KeyStream out{{}, std::move(label)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(trim(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    std::uint64_t asu = 0;
    std::uint64_t lba = 0;
    if (fields.size() < 5 || !parse_u64(fields[0], asu) || !parse_u64(fields[1], lba))
      malformed(out.label, line_no, line);
    out.keys.push_back((asu << 48) ^ lba);
  }
  if (in.bad()) throw TraceError(out.label + ": read error");
  require_keys(out);
  return out;
}

KeyStream load_trace(const std::string& path, TraceFormat format) {
  std::ifstream in(path);
  if (!in) throw TraceError("cannot open trace '" + path + "'");
  switch (format) {
    case TraceFormat::kPlain: return parse_plain(in, path);
    case TraceFormat::kArc: return parse_arc_blocks(in, path);
    case TraceFormat::kSpc: return parse_spc(in, path);
  }
  throw TraceError("unknown trace format");
}

void write_plain(const KeyStream& stream, std::ostream& out) {
  for (Key k : stream.keys) out << k << '\n';
}

std::string_view to_string(SyntheticMode m) noexcept {
  switch (m) {
    case SyntheticMode::kMiss100: return "miss100";
    case SyntheticMode::kHit100: return "hit100";
    case SyntheticMode::kHit95: return "hit95";
    case SyntheticMode::kHit90: return "hit90";
    case SyntheticMode::kZipf: return "zipf";
  }
  return "?";
}

SyntheticMode parse_synthetic_mode(std::string_view name) {
  for (auto m : {SyntheticMode::kMiss100, SyntheticMode::kHit100, SyntheticMode::kHit95,
                 SyntheticMode::kHit90, SyntheticMode::kZipf})
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown synthetic mode: " + std::string(name));
}

KeyStream gen_zipf(const SyntheticSpec& spec) {
  if (spec.universe == 0) throw std::invalid_argument("zipf universe must be positive");
  if (!(spec.alpha > 0)) throw std::invalid_argument("zipf exponent must be positive");
  if (spec.requests == 0) throw std::invalid_argument("request count must be positive");

  std::vector<double> cdf(spec.universe);
  double total = 0;
  for (std::size_t r = 0; r < spec.universe; ++r) {
    total += std::pow(static_cast<double>(r + 1), -spec.alpha);
    cdf[r] = total;
  }

  SplitMix64 rng(spec.seed);
  std::vector<Key> ids(spec.universe);
  std::iota(ids.begin(), ids.end(), Key{0});
  for (std::size_t i = spec.universe; i > 1; --i)
    std::swap(ids[i - 1], ids[static_cast<std::size_t>(rng.below(i))]);

  KeyStream out;
  out.label = "zipf(alpha=" + std::to_string(spec.alpha) + ",universe=" +
              std::to_string(spec.universe) + ",seed=" + std::to_string(spec.seed) + ")";
  out.keys.reserve(spec.requests);
  for (std::size_t i = 0; i < spec.requests; ++i) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t rank = std::min<std::size_t>(it - cdf.begin(), spec.universe - 1);
    out.keys.push_back(ids[rank]);
  }
  return out;
}

std::size_t RequestScript::fresh_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [](const ScriptStep& s) { return s.put_on_miss; }));
}

RequestScript gen_fixed_hit(const SyntheticSpec& spec, const CacheConfig& cache) {
  if (spec.mode == SyntheticMode::kZipf)
    throw std::invalid_argument("gen_fixed_hit needs a fixed-hit mode");
  if (spec.requests == 0) throw std::invalid_argument("request count must be positive");

  constexpr Key kResidentBase = 0x4000'0000'0000'0000ULL;
  constexpr Key kFreshBase = 0x8000'0000'0000'0000ULL;
  const std::size_t sets = cache.num_sets();
  const std::size_t resident_sets = sets > 1 ? sets / 2 : 1;

  RequestScript script;
  if (sets > 1) {
    std::vector<std::size_t> fill(resident_sets, 0);
    const std::size_t target = resident_sets * cache.ways;
    for (Key k = kResidentBase; script.resident.size() < target; ++k) {
      const std::size_t s = set_index(k, cache);
      if (s < resident_sets && fill[s] < cache.ways) {
        ++fill[s];
        script.resident.push_back(k);
      }
    }
  } else {
    for (std::size_t i = 0; i + 1 < cache.ways; ++i) script.resident.push_back(kResidentBase + i);
  }

  if (script.resident.empty() && spec.mode != SyntheticMode::kMiss100)
    throw std::invalid_argument("cache too small to hold a resident key set");

  Key next_fresh = kFreshBase;
  auto fresh = [&] {
    for (;;) {
      const Key k = next_fresh++;
      if (sets == 1 || set_index(k, cache) >= resident_sets) return k;
    }
  };

  std::size_t period = 0;
  switch (spec.mode) {
    case SyntheticMode::kMiss100: period = 1; break;
    case SyntheticMode::kHit100: period = 0; break;
    case SyntheticMode::kHit95: period = 20; break;
    case SyntheticMode::kHit90: period = 10; break;
    case SyntheticMode::kZipf: break;
  }

  script.steps.reserve(spec.requests);
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < spec.requests; ++i) {
    if (period != 0 && (i + 1) % period == 0) {
      script.steps.push_back({fresh(), true});
    } else {
      script.steps.push_back({script.resident[cursor], false});
      cursor = (cursor + 1) % script.resident.size();
    }
  }
  return script;
}

std::vector<ScriptStep> to_steps(const KeyStream& stream) {
  std::vector<ScriptStep> out;
  out.reserve(stream.size());
  for (Key k : stream.keys) out.push_back({k, true});
  return out;
}

}  // namespace kway

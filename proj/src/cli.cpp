#include "kway/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kway/bench.hpp"
#include "kway/kway_cache.hpp"
#include "kway/report.hpp"
#include "kway/sim.hpp"
#include "kway/traces.hpp"

namespace kway::cli {
namespace {

/// Raised for invalid flag values and combinations; reported with usage.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string capacity = "2^14";
  std::string ways;
  std::string policy = "lru";
  std::string variant;
  bool admission = false;
  std::string sample = "8";
  std::string trace;
  std::string format = "plain";
  std::size_t threads = 1;
  double duration = 1.0;
  std::size_t repeats = 11;
  std::uint64_t seed = 1;
  std::string out;
  bool json = false;
  bool pin = false;
  std::string target = "kway";
  std::string mode;
  std::size_t universe = 1 << 18;
  std::size_t requests = 1'000'000;
  double alpha = 1.0;
  std::string slots = "200000";
  std::size_t items = 100000;
  std::size_t trials = 1000;
};

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_size(item));
  }
  if (out.empty()) throw UsageError("empty list: '" + text + "'");
  return out;
}

std::size_t single_ways(const Options& o, std::string_view fallback = "8") {
  return parse_size(o.ways.empty() ? fallback : std::string_view(o.ways));
}

std::uint64_t hash_seed_for(std::uint64_t seed) { return hash64(seed, 0); }

CacheConfig build_config(const Options& o, std::size_t ways, Variant default_variant) {
  const std::size_t capacity = parse_size(o.capacity);
  if (ways > capacity)
    throw UsageError("--ways " + std::to_string(ways) + " exceeds --capacity " +
                     std::to_string(capacity));
  return CacheConfig::make(capacity, ways, parse_policy(o.policy),
                           o.variant.empty() ? default_variant : parse_variant(o.variant),
                           o.admission, hash_seed_for(o.seed));
}

OutputFormat output_format(const Options& o) { return o.json ? OutputFormat::kJson : OutputFormat::kCsv; }

KeyStream load(const Options& o) {
  if (o.trace.empty()) throw UsageError("--trace is required");
  try {
    return load_trace(o.trace, parse_trace_format(o.format));
  } catch (const TraceError& e) {
    throw UsageError(e.what());
  }
}

RunHeader header_for(const std::string& command, const Options& o) {
  RunHeader h{command, {}};
  h.settings.emplace_back("seed", std::to_string(o.seed));
  if (!o.trace.empty()) {
    h.settings.emplace_back("trace", o.trace);
    h.settings.emplace_back("format", o.format);
  }
  return h;
}

void add_config(RunHeader& h, const CacheConfig& c) {
  h.settings.emplace_back("capacity", std::to_string(c.capacity));
  h.settings.emplace_back("ways", std::to_string(c.ways));
  h.settings.emplace_back("sets", std::to_string(c.num_sets()));
  h.settings.emplace_back("policy", std::string(to_string(c.policy)));
  h.settings.emplace_back("variant", std::string(to_string(c.variant)));
  h.settings.emplace_back("admission", c.admission ? "on" : "off");
  h.settings.emplace_back("hash_seed", std::to_string(c.hash_seed));
}

template <class Fn>
void with_output(const Options& o, std::ostream& fallback, Fn&& write) {
  if (o.out.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output '" + o.out + "'");
  write(file);
}

void cmd_hitratio(const Options& o, std::ostream& out) {
  const CacheConfig config = build_config(o, single_ways(o), Variant::kSt);
  const KeyStream stream = load(o);
  std::unique_ptr<KWayCache> cache = make_cache(config);
  const RunMetrics m = replay(*cache, stream);
  RunHeader h = header_for("hitratio", o);
  add_config(h, config);
  h.settings.emplace_back("requested_capacity", o.capacity);
  const SweepRow row{"kway-" + std::to_string(config.ways), CacheKind::kKWay, config.ways,
                     config.capacity, m};
  with_output(o, out, [&](std::ostream& os) {
    write_hit_ratio(os, output_format(o), h, {row}, config);
  });
}

void cmd_sweep(const Options& o, std::ostream& out) {
  const std::vector<std::size_t> ways =
      o.ways.empty() ? std::vector<std::size_t>{4, 8, 16, 32, 64, 128} : parse_size_list(o.ways);
  const std::vector<std::size_t> samples = parse_size_list(o.sample);
  const std::size_t capacity = parse_size(o.capacity);
  for (std::size_t w : ways)
    if (w > capacity) throw UsageError("ways " + std::to_string(w) + " exceeds capacity");
  for (std::size_t s : samples)
    if (s > capacity) throw UsageError("sample " + std::to_string(s) + " exceeds capacity");

  CacheConfig base;
  base.capacity = capacity;
  base.ways = 1;
  base.policy = parse_policy(o.policy);
  base.variant = Variant::kSt;
  base.admission = o.admission;
  base.hash_seed = hash_seed_for(o.seed);
  const KeyStream stream = load(o);
  const auto rows = sweep_associativity(base, stream, ways, samples);

  RunHeader h = header_for("sweep", o);
  h.settings.emplace_back("capacity", std::to_string(capacity));
  h.settings.emplace_back("policy", std::string(to_string(base.policy)));
  h.settings.emplace_back("variant", "st");
  h.settings.emplace_back("admission", base.admission ? "on" : "off");
  h.settings.emplace_back("hash_seed", std::to_string(base.hash_seed));
  with_output(o, out, [&](std::ostream& os) { write_hit_ratio(os, output_format(o), h, rows, base); });
}

void cmd_throughput(const Options& o, std::ostream& out) {
  BenchPlan plan;
  plan.config = build_config(o, single_ways(o), Variant::kWfa);
  if (o.target == "kway") {
    plan.target = BenchTarget::kKWay;
  } else if (o.target == "fa") {
    plan.target = BenchTarget::kLockedFullyAssociative;
  } else if (o.target == "sampled") {
    plan.target = BenchTarget::kLockedSampled;
  } else {
    throw UsageError("unknown --target '" + o.target + "'");
  }
  plan.sample_size = parse_size_list(o.sample).front();
  if (!o.trace.empty()) {
    plan.stream = load(o);
  } else {
    SyntheticSpec spec;
    spec.mode = parse_synthetic_mode(o.mode.empty() ? "miss100" : o.mode);
    spec.universe = o.universe;
    spec.requests = o.requests;
    spec.alpha = o.alpha;
    spec.seed = o.seed;
    plan.synthetic = spec;
  }
  plan.threads = o.threads;
  plan.duration_secs = o.duration;
  plan.repeats = o.repeats;
  plan.seed = o.seed;
  plan.pin_threads = o.pin;
  validate(plan);

  const BenchResult result = run_throughput(plan);
  RunHeader h = header_for("throughput", o);
  add_config(h, plan.config);
  h.settings.emplace_back("target", target_label(plan));
  h.settings.emplace_back("workload", plan.synthetic ? std::string(to_string(plan.synthetic->mode))
                                                     : std::string("trace"));
  h.settings.emplace_back("threads", std::to_string(plan.threads));
  h.settings.emplace_back("duration", std::to_string(plan.duration_secs));
  h.settings.emplace_back("repeats", std::to_string(plan.repeats));
  with_output(o, out, [&](std::ostream& os) { write_bench(os, output_format(o), h, {result}); });
}

void cmd_synth(const Options& o, std::ostream& out) {
  SyntheticSpec spec;
  spec.mode = parse_synthetic_mode(o.mode.empty() ? "zipf" : o.mode);
  spec.universe = o.universe;
  spec.requests = o.requests;
  spec.alpha = o.alpha;
  spec.seed = o.seed;

  RunHeader h{"synth", {}};
  h.settings.emplace_back("mode", std::string(to_string(spec.mode)));
  h.settings.emplace_back("requests", std::to_string(spec.requests));
  h.settings.emplace_back("seed", std::to_string(spec.seed));
  KeyStream stream;
  if (spec.mode == SyntheticMode::kZipf) {
    h.settings.emplace_back("universe", std::to_string(spec.universe));
    h.settings.emplace_back("alpha", std::to_string(spec.alpha));
    stream = gen_zipf(spec);
  } else {
    const CacheConfig config = build_config(o, single_ways(o), Variant::kSt);
    add_config(h, config);
    const RequestScript script = gen_fixed_hit(spec, config);
    h.settings.emplace_back("resident", std::to_string(script.resident.size()));
    for (const ScriptStep& s : script.steps) stream.keys.push_back(s.key);
  }
  with_output(o, out, [&](std::ostream& os) {
    os << h.line() << '\n';
    write_plain(stream, os);
  });
}

void cmd_ballsbins(const Options& o, std::ostream& out) {
  const std::size_t slots = parse_size(o.slots);
  const std::size_t ways = single_ways(o, "64");
  if (ways == 0 || slots % ways != 0) throw UsageError("--slots must be a multiple of --ways");
  if (o.items > slots) throw UsageError("--items exceeds --slots");
  const BallsInBinsResult r = balls_in_bins(slots, ways, o.items, o.trials, o.seed);
  const double bound = slots >= 2 * o.items ? theorem_failure_bound(slots, o.items, ways) : 1.0;
  RunHeader h{"ballsbins", {}};
  h.settings.emplace_back("slots", std::to_string(slots));
  h.settings.emplace_back("ways", std::to_string(ways));
  h.settings.emplace_back("items", std::to_string(o.items));
  h.settings.emplace_back("trials", std::to_string(o.trials));
  h.settings.emplace_back("seed", std::to_string(o.seed));
  with_output(o, out, [&](std::ostream& os) {
    write_balls_in_bins(os, output_format(o), h, {{r, bound}});
  });
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--capacity", o.capacity, "Cache capacity in items (e.g. 16384 or 2^14)");
  app->add_option("--ways", o.ways, "Ways per set (comma-separated list for sweep)");
  app->add_option("--policy", o.policy, "lru, lfu, fifo, random or hyperbolic");
  app->add_option("--variant", o.variant, "wfa, wfsc, ls or st");
  app->add_flag("--admission", o.admission, "Enable TinyLFU admission");
  app->add_option("--sample", o.sample, "Sample size(s) for the sampled baseline");
  app->add_option("--trace", o.trace, "Trace file");
  app->add_option("--format", o.format, "Trace format: plain, arc or spc");
  app->add_option("--seed", o.seed, "Seed for hashing and generators");
  app->add_option("--out", o.out, "Output file (default: standard output)");
  app->add_flag("--json", o.json, "Write JSON instead of CSV");
}

}  // namespace

std::size_t parse_size(std::string_view text) {
  auto parse_number = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      throw UsageError("not a size: '" + std::string(text) + "'");
    return v;
  };
  if (text.starts_with("2^")) {
    const std::size_t exponent = parse_number(text.substr(2));
    if (exponent >= 63) throw UsageError("size too large: '" + std::string(text) + "'");
    return std::size_t{1} << exponent;
  }
  return parse_number(text);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Limited-associativity cache simulator and benchmark", "kway"};
  app.require_subcommand(1);

  auto* hitratio = app.add_subcommand("hitratio", "Hit ratio of one k-way configuration on a trace");
  add_common(hitratio, o);

  auto* sweep = app.add_subcommand("sweep", "Hit ratio across associativities, samples and FA");
  add_common(sweep, o);

  auto* throughput = app.add_subcommand("throughput", "Multi-threaded get/put throughput");
  add_common(throughput, o);
  throughput->add_option("--threads", o.threads, "Worker threads");
  throughput->add_option("--duration", o.duration, "Seconds per repeat");
  throughput->add_option("--repeats", o.repeats, "Timed repeats");
  throughput->add_option("--target", o.target, "kway, fa or sampled (baselines run under one lock)");
  throughput->add_option("--mode", o.mode, "Synthetic workload when no trace: miss100, hit100, hit95, hit90, zipf");
  throughput->add_option("--universe", o.universe, "Zipf key universe");
  throughput->add_option("--requests", o.requests, "Synthetic request count");
  throughput->add_option("--alpha", o.alpha, "Zipf exponent");
  throughput->add_flag("--pin", o.pin, "Pin worker threads to CPUs");

  auto* synth = app.add_subcommand("synth", "Write a synthetic trace in plain format");
  add_common(synth, o);
  synth->add_option("--mode", o.mode, "zipf, miss100, hit100, hit95 or hit90");
  synth->add_option("--universe", o.universe, "Zipf key universe");
  synth->add_option("--requests", o.requests, "Request count");
  synth->add_option("--alpha", o.alpha, "Zipf exponent");

  auto* ballsbins = app.add_subcommand("ballsbins", "Monte-Carlo set overflow check against the union bound");
  ballsbins->add_option("--slots", o.slots, "Total slots");
  ballsbins->add_option("--ways", o.ways, "Ways per set");
  ballsbins->add_option("--items", o.items, "Items to place");
  ballsbins->add_option("--trials", o.trials, "Trials");
  ballsbins->add_option("--seed", o.seed, "Seed");
  ballsbins->add_option("--out", o.out, "Output file");
  ballsbins->add_flag("--json", o.json, "Write JSON instead of CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "kway: " << e.what() << '\n' << app.help();
    return 2;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == hitratio) cmd_hitratio(o, out);
    else if (active == sweep) cmd_sweep(o, out);
    else if (active == throughput) cmd_throughput(o, out);
    else if (active == synth) cmd_synth(o, out);
    else cmd_ballsbins(o, out);
  } catch (const std::invalid_argument& e) {
    err << "kway " << active->get_name() << ": " << e.what() << '\n' << active->help();
    return 2;
  } catch (const std::exception& e) {
    err << "kway " << active->get_name() << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace kway::cli

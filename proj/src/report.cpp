#include "kway/report.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace kway {
namespace {

using nlohmann::ordered_json;

std::string format_fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

double as_number(const std::string& s) { return std::stod(s); }

ordered_json header_json(const RunHeader& header) {
  ordered_json j;
  j["command"] = header.command;
  ordered_json settings = ordered_json::object();
  for (const auto& [k, v] : header.settings) settings[k] = v;
  j["settings"] = settings;
  return j;
}

}  // namespace

std::string RunHeader::line() const {
  std::string out = "# " + command;
  for (const auto& [k, v] : settings) out += " " + k + "=" + v;
  return out;
}

std::string format_ratio(double x) { return format_fixed(x, 6); }
std::string format_rate(double x) { return format_fixed(x, 1); }

void write_hit_ratio(std::ostream& out, OutputFormat format, const RunHeader& header,
                     const std::vector<SweepRow>& rows, const CacheConfig& base) {
  const std::string policy(to_string(base.policy));
  const std::string admission = base.admission ? "on" : "off";
  if (format == OutputFormat::kCsv) {
    out << header.line() << '\n';
    out << "label,policy,ways,capacity,admission,requests,hits,misses,hit_ratio\n";
    for (const SweepRow& r : rows) {
      out << r.label << ',' << policy << ',' << r.width << ',' << r.capacity << ',' << admission
          << ',' << r.metrics.requests() << ',' << r.metrics.hits << ',' << r.metrics.misses << ','
          << format_ratio(r.metrics.hit_ratio()) << '\n';
    }
    return;
  }
  ordered_json j = header_json(header);
  ordered_json arr = ordered_json::array();
  for (const SweepRow& r : rows) {
    arr.push_back({{"label", r.label},
                   {"policy", policy},
                   {"ways", r.width},
                   {"capacity", r.capacity},
                   {"admission", admission},
                   {"requests", r.metrics.requests()},
                   {"hits", r.metrics.hits},
                   {"misses", r.metrics.misses},
                   {"hit_ratio", as_number(format_ratio(r.metrics.hit_ratio()))}});
  }
  j["rows"] = arr;
  out << j.dump(2) << '\n';
}

void write_bench(std::ostream& out, OutputFormat format, const RunHeader& header,
                 const std::vector<BenchResult>& results) {
  if (format == OutputFormat::kCsv) {
    out << header.line() << '\n';
    out << "variant,policy,ways,capacity,threads,repeat,ops_per_sec,hit_ratio\n";
    for (const BenchResult& r : results) {
      std::string repeats;
      for (std::size_t i = 0; i < r.ops_per_sec.size(); ++i) {
        if (i) repeats += ';';
        repeats += format_rate(r.ops_per_sec[i]);
      }
      out << r.variant << ',' << to_string(r.policy) << ',' << r.ways << ',' << r.capacity << ','
          << r.threads << ',' << repeats << ',' << format_rate(r.mean_ops_per_sec()) << ','
          << format_ratio(r.hit_ratio()) << '\n';
    }
    return;
  }
  ordered_json j = header_json(header);
  ordered_json arr = ordered_json::array();
  for (const BenchResult& r : results) {
    ordered_json repeats = ordered_json::array();
    for (double x : r.ops_per_sec) repeats.push_back(as_number(format_rate(x)));
    arr.push_back({{"variant", r.variant},
                   {"policy", std::string(to_string(r.policy))},
                   {"ways", r.ways},
                   {"capacity", r.capacity},
                   {"threads", r.threads},
                   {"repeat", repeats},
                   {"ops_per_sec", as_number(format_rate(r.mean_ops_per_sec()))},
                   {"hit_ratio", as_number(format_ratio(r.hit_ratio()))}});
  }
  j["rows"] = arr;
  out << j.dump(2) << '\n';
}

void write_balls_in_bins(std::ostream& out, OutputFormat format, const RunHeader& header,
                         const std::vector<BallsInBinsReport>& rows) {
  if (format == OutputFormat::kCsv) {
    out << header.line() << '\n';
    out << "slots,ways,sets,items,trials,successes,success_fraction,failure_fraction,failure_bound\n";
    for (const auto& [r, bound] : rows) {
      out << r.slots << ',' << r.ways << ',' << r.sets << ',' << r.items << ',' << r.trials << ','
          << r.successes << ',' << format_ratio(r.success_fraction()) << ','
          << format_ratio(r.failure_fraction()) << ',' << format_ratio(bound) << '\n';
    }
    return;
  }
  ordered_json j = header_json(header);
  ordered_json arr = ordered_json::array();
  for (const auto& [r, bound] : rows) {
    arr.push_back({{"slots", r.slots},
                   {"ways", r.ways},
                   {"sets", r.sets},
                   {"items", r.items},
                   {"trials", r.trials},
                   {"successes", r.successes},
                   {"success_fraction", as_number(format_ratio(r.success_fraction()))},
                   {"failure_fraction", as_number(format_ratio(r.failure_fraction()))},
                   {"failure_bound", as_number(format_ratio(bound))}});
  }
  j["rows"] = arr;
  out << j.dump(2) << '\n';
}

}  // namespace kway

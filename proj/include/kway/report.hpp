#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kway/bench.hpp"
#include "kway/sim.hpp"

namespace kway {

/// Header comment embedded in every output: "# <command> key=value ...".
struct RunHeader {
  std::string command;
  std::vector<std::pair<std::string, std::string>> settings;

  std::string line() const;
};

enum class OutputFormat { kCsv, kJson };

/// Fixed-precision renderings shared by the CSV and JSON writers, so both
/// encode the same numbers.
std::string format_ratio(double x);
std::string format_rate(double x);

void write_hit_ratio(std::ostream& out, OutputFormat format, const RunHeader& header,
                     const std::vector<SweepRow>& rows, const CacheConfig& base);

/// Columns: variant,policy,ways,capacity,threads,repeat,ops_per_sec,hit_ratio.
/// One row per plan; `repeat` lists the per-repeat rates separated by ';' and
/// ops_per_sec is their mean.
void write_bench(std::ostream& out, OutputFormat format, const RunHeader& header,
                 const std::vector<BenchResult>& results);

struct BallsInBinsReport {
  BallsInBinsResult result;
  double bound;
};

void write_balls_in_bins(std::ostream& out, OutputFormat format, const RunHeader& header,
                         const std::vector<BallsInBinsReport>& rows);

}  // namespace kway

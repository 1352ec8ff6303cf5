#ifndef ACCTLENS_REPORT_TYPES_H_
#define ACCTLENS_REPORT_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "acctlens/histogram.h"

namespace acctlens {

struct GeneralSummary {
  std::uint64_t total_commands = 0;
  std::uint64_t distinct_commands = 0;
  bool distinct_estimated = false;  // sketch mode
  std::optional<double> first_event;  // min btime
  std::optional<double> last_event;   // max btime + etime
  double period_days = 0;
  std::uint64_t period_days_ceil = 0;
  double distinct_ratio = 0;
};

enum class RankMetric { kInstanceCount, kDistinctUserCount };

inline constexpr std::size_t kTopN = 20;

struct RankedEntry {
  std::string label;
  std::uint64_t count = 0;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

struct RankedList {
  RankMetric metric = RankMetric::kInstanceCount;
  std::vector<RankedEntry> entries;  // count desc, then label asc
  // Records seen (InstanceCount) or distinct uids seen (DistinctUserCount).
  std::uint64_t universe = 0;
};

struct MetricSummary {
  double mean = 0;
  double median = 0;
  double max = 0;
};

struct FeatureRow {
  std::uint32_t uid = 0;
  std::string user;  // empty unless a passwd mapping resolved it
  std::uint64_t total_commands = 0;
  std::uint64_t distinct_commands = 0;
  MetricSummary stime;
  MetricSummary utime;
  MetricSummary etime;
  MetricSummary mem;
  std::vector<double> stime_fractions;
  std::vector<double> utime_fractions;
  std::vector<double> etime_fractions;
  double superuser_fraction = 0;
};

struct FeatureTable {
  std::vector<std::string> stime_labels;
  std::vector<std::string> utime_labels;
  std::vector<std::string> etime_labels;
  std::vector<FeatureRow> rows;  // ascending uid

  // Flat column names, in the order FeatureRow values are rendered.
  std::vector<std::string> Columns() const;
  std::vector<double> NumericValues(const FeatureRow& row) const;
};

// A report whose observer threw during the pass.
struct ReportFailure {
  std::string message;
};

using ReportPayload = std::variant<GeneralSummary, Histogram, RankedList,
                                   FeatureTable, ReportFailure>;

struct ReportOutput {
  std::string name;
  std::string title;
  std::string x_label;
  std::string y_label;
  ReportPayload payload;
};

}  // namespace acctlens

#endif  // ACCTLENS_REPORT_TYPES_H_

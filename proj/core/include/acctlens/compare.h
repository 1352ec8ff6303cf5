#ifndef ACCTLENS_COMPARE_H_
#define ACCTLENS_COMPARE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acctlens/render.h"
#include "acctlens/report_types.h"

namespace acctlens {

// Per-bucket percent difference B - A for a histogram present in both runs.
struct HistogramDelta {
  std::string name;
  bool comparable = false;  // false when bucket edges differ
  std::vector<std::string> labels;
  std::vector<double> percent_delta;
};

// Commands of two top-20 lists.
struct RankingOverlap {
  std::string name;
  std::vector<std::string> shared;
  std::vector<std::string> only_a;
  std::vector<std::string> only_b;
};

struct ReportPair {
  ReportOutput a;
  ReportOutput b;
};

// Two runs side by side. A is the first log, B the second; ratios are B
// over A ("B ran 21.27 times as many commands as A").
struct ComparisonResult {
  std::vector<ReportPair> pairs;  // A's order
  std::vector<std::string> only_in_a;
  std::vector<std::string> only_in_b;
  std::optional<double> total_command_ratio;
  std::optional<double> distinct_ratio_ratio;
  // The distinct-ratio ratio is an order of magnitude on a log scale:
  // round(log10(max(r, 1/r))) >= 1, i.e. a factor of at least sqrt(10).
  bool distinct_ratio_order_of_magnitude = false;
  std::vector<HistogramDelta> histogram_deltas;
  std::vector<RankingOverlap> ranking_overlaps;
};

inline constexpr double kMagnitudeFlagFactor = 3.1622776601683795;

ComparisonResult CompareReports(std::span<const ReportOutput> a,
                                std::span<const ReportOutput> b);

// Text or Json; other formats throw IncompatibleRender.
std::string RenderComparison(const ComparisonResult& result,
                             RenderFormat format, std::string_view label_a,
                             std::string_view label_b);

}  // namespace acctlens

#endif  // ACCTLENS_COMPARE_H_

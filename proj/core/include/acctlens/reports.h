#ifndef ACCTLENS_REPORTS_H_
#define ACCTLENS_REPORTS_H_

#include <array>
#include <string_view>
#include <vector>

#include "acctlens/distinct_counter.h"
#include "acctlens/engine.h"
#include "acctlens/histogram.h"
#include "acctlens/report_types.h"

namespace acctlens {

// The nine standard reports, in canonical output order.
inline constexpr std::array<std::string_view, 9> kStandardReportNames = {
    "general", "users_total", "users_distinct", "top20_total", "top20_distinct",
    "stime",   "utime",       "etime",          "memory"};

inline constexpr std::string_view kFeaturesReportName = "features";

struct ReportInfo {
  std::string_view name;
  std::string_view title;
  std::string_view x_label;
  std::string_view y_label;
};

// Titles and axis labels for the standard reports and "features". Throws
// std::out_of_range for other names.
const ReportInfo& StandardReportInfo(std::string_view name);
bool IsStandardReport(std::string_view name);

// Default bucket edges for users_total, users_distinct, stime, utime, etime
// and memory. Throws std::out_of_range for other names.
HistogramSpec DefaultSpec(std::string_view report_name);

// Memory spec whose edges are picked from the observed range at finalize.
HistogramSpec AdaptiveMemorySpec();

struct ReportOptions {
  HistogramSpec users_total = DefaultSpec("users_total");
  HistogramSpec users_distinct = DefaultSpec("users_distinct");
  HistogramSpec stime = DefaultSpec("stime");
  HistogramSpec utime = DefaultSpec("utime");
  HistogramSpec etime = DefaultSpec("etime");
  HistogramSpec memory = DefaultSpec("memory");
  DistinctMode distinct_mode = DistinctMode::kExact;
};

// Every execution instance counts toward the total; each command name
// counts once toward the distinct total.
ReportRegistration GeneralReport(DistinctMode mode = DistinctMode::kExact);

// One count per uid, in the bucket of that uid's total command count.
ReportRegistration UserTotalHistogram(HistogramSpec spec);

// One count per uid, in the bucket of that uid's distinct command count.
ReportRegistration UserDistinctHistogram(
    HistogramSpec spec, DistinctMode mode = DistinctMode::kExact);

// Top 20 commands by execution instances.
ReportRegistration Top20Total();

// Top 20 commands by number of distinct uids that ran them at least once.
ReportRegistration Top20DistinctUsers();

// One count per record, bucketed on the respective time field.
ReportRegistration StimeHistogram(HistogramSpec spec);
ReportRegistration UtimeHistogram(HistogramSpec spec);
ReportRegistration EtimeHistogram(HistogramSpec spec);

// One count per record on mem_pages. An adaptive spec keeps exact
// per-value counts (the value set is bounded by the 16-bit field encoding)
// and picks edges from the observed maximum at finalize.
ReportRegistration MemoryHistogram(HistogramSpec spec);

// Builds one standard report by name. Throws std::out_of_range.
ReportRegistration MakeStandardReport(std::string_view name,
                                      const ReportOptions& options = {});

std::vector<ReportRegistration> StandardReports(
    const ReportOptions& options = {});

// Sorts by count descending, label ascending, and keeps the first limit.
template <typename Map>
RankedList RankTop(const Map& counts, RankMetric metric,
                   std::uint64_t universe, std::size_t limit = kTopN);

}  // namespace acctlens

#include "acctlens/internal/rank_top.h"

#endif  // ACCTLENS_REPORTS_H_

#ifndef ACCTLENS_PIPELINE_H_
#define ACCTLENS_PIPELINE_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "acctlens/byte_source.h"
#include "acctlens/detect.h"
#include "acctlens/engine.h"
#include "acctlens/passwd.h"
#include "acctlens/reports.h"

namespace acctlens {

struct AnalysisOptions {
  unsigned ahz = kDefaultAhz;
  DetectionHints hints;
  ReportOptions reports;
  // Report names to run, in order; empty means the nine standard reports.
  // "features" selects the per-user feature table.
  std::vector<std::string> report_names;
  std::shared_ptr<const UserNames> names;
};

// Detects the layout of source (restricted to the hinted kind/order) and
// rewinds it. With both hints set nothing is probed and the hinted layout is
// returned, so an empty source is then a valid zero-record log; otherwise
// an empty source throws UnknownFormat.
DetectedFormat ResolveFormat(ByteSource& source, const DetectionHints& hints);

// Builds the registrations named by options (std::out_of_range on an
// unknown name).
std::vector<ReportRegistration> BuildReports(const AnalysisOptions& options);

// Format resolution followed by one pass over the log.
RunResult Analyze(ByteSource& source, const AnalysisOptions& options);
RunResult AnalyzeFile(const std::filesystem::path& path,
                      const AnalysisOptions& options);

}  // namespace acctlens

#endif  // ACCTLENS_PIPELINE_H_

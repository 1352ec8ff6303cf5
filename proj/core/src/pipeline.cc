#include "acctlens/pipeline.h"

#include "acctlens/features.h"
#include "acctlens/record_stream.h"

namespace acctlens {

DetectedFormat ResolveFormat(ByteSource& source, const DetectionHints& hints) {
  // Both overrides given: nothing left to detect.
  if (hints.kind && hints.order) {
    return DetectedFormat{*hints.kind, *hints.order, 1.0};
  }
  return DetectFormat(source, hints);
}

std::vector<ReportRegistration> BuildReports(const AnalysisOptions& options) {
  if (options.report_names.empty()) return StandardReports(options.reports);
  std::vector<ReportRegistration> regs;
  for (const std::string& name : options.report_names) {
    if (name == kFeaturesReportName) {
      FeatureSpecs specs{options.reports.stime, options.reports.utime,
                         options.reports.etime, 1024};
      regs.push_back(UserFeaturesReport(std::move(specs), options.names));
    } else {
      regs.push_back(MakeStandardReport(name, options.reports));
    }
  }
  return regs;
}

RunResult Analyze(ByteSource& source, const AnalysisOptions& options) {
  const DetectedFormat format = ResolveFormat(source, options.hints);
  ReportRun run;
  for (ReportRegistration& reg : BuildReports(options)) {
    run.Register(std::move(reg));
  }
  RecordStream stream(source, format.kind, format.order, options.ahz);
  RunResult result = run.Run(stream);
  result.metadata.source_order = format.order;
  return result;
}

RunResult AnalyzeFile(const std::filesystem::path& path,
                      const AnalysisOptions& options) {
  FileByteSource source(path);
  return Analyze(source, options);
}

}  // namespace acctlens

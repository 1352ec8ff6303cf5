#ifndef ACCTLENS_RENDER_H_
#define ACCTLENS_RENDER_H_

#include <optional>
#include <string>
#include <string_view>

#include "acctlens/engine.h"
#include "acctlens/report_types.h"

namespace acctlens {

inline constexpr int kSchemaVersion = 1;

enum class RenderFormat { kText, kJson, kCsv, kSvg, kHtml };

std::string_view ToString(RenderFormat format);
std::optional<RenderFormat> ParseRenderFormat(std::string_view text);

// Renders one report. Output is a pure function of the input.
//   Text  aligned table (histograms and rankings with '#' bars)
//   Json  {"schema_version": 1, "name": ..., "kind": ..., ...}
//   Csv   header row, then one row per bucket / entry / field / user
//   Svg   standalone bar chart; Histogram and RankedList only
//   Html  single-report page
// Throws IncompatibleRender for Svg of other shapes.
std::string Render(const ReportOutput& output, RenderFormat format);

// Renders every output of a run as one document: Text (sections), Json
// ({"schema_version", "metadata", "reports"}) or Html (one page, one
// section per report, SVG charts inline, no external resources). Wall time
// is left out so identical inputs give identical bytes.
std::string RenderRun(const RunResult& run, RenderFormat format,
                      std::string_view title = "Process accounting report");

// "2006-01-01T00:00:00Z" (seconds truncated toward negative infinity).
std::string FormatTimestamp(double epoch_seconds);

}  // namespace acctlens

#endif  // ACCTLENS_RENDER_H_

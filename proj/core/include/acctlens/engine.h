#ifndef ACCTLENS_ENGINE_H_
#define ACCTLENS_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acctlens/format.h"
#include "acctlens/record_stream.h"
#include "acctlens/report_types.h"

namespace acctlens {

// A report taking part in a run: observe() sees every record once, then
// finalize() is called once after the last record.
struct ReportRegistration {
  std::string name;
  std::function<void(const ProcessRecord&)> observe;
  std::function<ReportOutput()> finalize;
};

struct RunMetadata {
  std::uint64_t records_read = 0;
  std::vector<std::string> warnings;
  std::uint64_t time_relation_violations = 0;
  double wall_time_ms = 0;
  std::optional<FormatKind> source_format;
  std::optional<Endianness> source_order;
};

struct RunResult {
  std::vector<ReportOutput> outputs;  // registration order
  RunMetadata metadata;
};

// Single-pass statistics collector. Reports register up front; Run() reads
// the source once, hands each record to every report in registration order,
// then collects one output per report. The engine keeps no records.
//
// A report that throws while observing is dropped from the rest of the pass
// and finalizes to a ReportFailure; the others are unaffected.
class ReportRun {
 public:
  // Throws DuplicateName, or RunAlreadyStarted after Run().
  void Register(ReportRegistration registration);

  // Throws NoReportsRegistered, RunAlreadyStarted on a second call, and
  // propagates source errors (no partial outputs are returned).
  RunResult Run(RecordSource& source);

  std::size_t size() const { return slots_.size(); }
  bool Contains(const std::string& name) const;

 private:
  struct Slot {
    ReportRegistration registration;
    std::uint64_t observed = 0;
    std::optional<std::string> failure;
  };

  std::vector<Slot> slots_;
  bool started_ = false;
};

// Tolerance for stime + utime <= etime checks, relative to etime.
inline constexpr double kTimeRelationTolerance = 1e-9;
bool ViolatesTimeRelation(const ProcessRecord& record);

}  // namespace acctlens

#endif  // ACCTLENS_ENGINE_H_

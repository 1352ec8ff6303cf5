#include "acctlens/engine.h"

#include <algorithm>
#include <chrono>
#include <exception>
#include <string>

#include "acctlens/errors.h"
#include "acctlens/warnings.h"

namespace acctlens {

bool ViolatesTimeRelation(const ProcessRecord& r) {
  return r.stime_s + r.utime_s >
         r.etime_s + kTimeRelationTolerance * std::max(1.0, r.etime_s);
}

bool ReportRun::Contains(const std::string& name) const {
  return std::any_of(slots_.begin(), slots_.end(), [&](const Slot& s) {
    return s.registration.name == name;
  });
}

void ReportRun::Register(ReportRegistration registration) {
  if (started_) throw RunAlreadyStarted("cannot register after the run");
  if (Contains(registration.name)) {
    throw DuplicateName("report '" + registration.name +
                        "' is already registered");
  }
  slots_.push_back(Slot{std::move(registration), 0, std::nullopt});
}

RunResult ReportRun::Run(RecordSource& source) {
  if (started_) throw RunAlreadyStarted("a run context runs only once");
  if (slots_.empty()) throw NoReportsRegistered("no reports registered");
  started_ = true;
  const auto start = std::chrono::steady_clock::now();

  RunResult result;
  RunMetadata& meta = result.metadata;
  WarningLog relation_warnings;

  // Phase A: every record to every live report, in registration order.
  while (std::optional<ProcessRecord> record = source.Next()) {
    ++meta.records_read;
    if (ViolatesTimeRelation(*record)) {
      ++meta.time_relation_violations;
      relation_warnings.Add("record " + std::to_string(meta.records_read - 1) +
                            " (" + record->comm +
                            "): stime + utime exceeds etime");
    }
    for (Slot& slot : slots_) {
      if (slot.failure) continue;
      try {
        slot.registration.observe(*record);
        ++slot.observed;
      } catch (const std::exception& e) {
        slot.failure = e.what();
      } catch (...) {
        slot.failure = "unknown error";
      }
    }
  }

  // Phase B: collect.
  result.outputs.reserve(slots_.size());
  for (Slot& slot : slots_) {
    if (!slot.failure) {
      try {
        result.outputs.push_back(slot.registration.finalize());
        result.outputs.back().name = slot.registration.name;
        continue;
      } catch (const std::exception& e) {
        slot.failure = e.what();
      }
    }
    ReportOutput failed;
    failed.name = slot.registration.name;
    failed.title = slot.registration.name;
    failed.payload = ReportFailure{*slot.failure};
    result.outputs.push_back(std::move(failed));
  }

  // Each category is capped on its own.
  meta.warnings = source.Warnings();
  for (std::string& line : relation_warnings.Lines()) {
    meta.warnings.push_back(std::move(line));
  }
  for (const Slot& slot : slots_) {
    if (slot.failure) {
      meta.warnings.push_back("report '" + slot.registration.name +
                              "' failed: " + *slot.failure);
    }
  }
  meta.source_format = source.Format();
  meta.wall_time_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return result;
}

}  // namespace acctlens

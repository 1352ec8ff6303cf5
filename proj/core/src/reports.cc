#include "acctlens/reports.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "acctlens/errors.h"
#include "acctlens/features.h"

namespace acctlens {
namespace {

constexpr std::array<ReportInfo, 10> kReportInfo = {{
    {"general", "General", "", ""},
    {"users_total", "Users (non-distinct) commands", "Total commands per user",
     "Users"},
    {"users_distinct", "Users (distinct) commands",
     "Distinct commands per user", "Users"},
    {"top20_total", "Top 20 used commands", "Command", "Executions"},
    {"top20_distinct", "Top 20 distinct commands", "Command",
     "Distinct users"},
    {"stime", "System time / number of commands", "System time (s)",
     "Commands"},
    {"utime", "User time / number of commands", "User time (s)", "Commands"},
    {"etime", "Elapsed time / number of commands", "Elapsed time (s)",
     "Commands"},
    {"memory", "Memory / number of commands", "Average memory (8K pages)",
     "Commands"},
    {"features", "Per-user features", "", ""},
}};

ReportOutput Labeled(std::string_view name, ReportPayload payload) {
  const ReportInfo& info = StandardReportInfo(name);
  return ReportOutput{std::string(info.name), std::string(info.title),
                      std::string(info.x_label), std::string(info.y_label),
                      std::move(payload)};
}

template <typename State>
ReportRegistration Register(std::string_view name,
                            std::shared_ptr<State> state) {
  return ReportRegistration{
      std::string(name),
      [state](const ProcessRecord& r) { state->Observe(r); },
      [state, name] { return Labeled(name, state->Finalize()); }};
}

class General {
 public:
  explicit General(DistinctMode mode) : distinct_(mode) {}

  void Observe(const ProcessRecord& r) {
    ++total_;
    distinct_.Add(r.comm);
    first_ = first_ ? std::min(*first_, static_cast<double>(r.btime))
                    : static_cast<double>(r.btime);
    last_ = last_ ? std::max(*last_, r.ExitTime()) : r.ExitTime();
  }

  ReportPayload Finalize() const {
    GeneralSummary s;
    s.total_commands = total_;
    s.distinct_commands = distinct_.Count();
    s.distinct_estimated = !distinct_.exact();
    s.first_event = first_;
    s.last_event = last_;
    if (first_ && last_) {
      s.period_days = (*last_ - *first_) / 86400.0;
      s.period_days_ceil = static_cast<std::uint64_t>(std::ceil(s.period_days));
    }
    if (total_ > 0) {
      s.distinct_ratio = static_cast<double>(s.distinct_commands) /
                         static_cast<double>(total_);
    }
    return s;
  }

 private:
  std::uint64_t total_ = 0;
  DistinctCounter distinct_;
  std::optional<double> first_;
  std::optional<double> last_;
};

class UserTotals {
 public:
  explicit UserTotals(HistogramSpec spec) : spec_(std::move(spec)) {}

  void Observe(const ProcessRecord& r) { ++per_user_[r.uid]; }

  ReportPayload Finalize() const {
    std::vector<std::uint64_t> counts(spec_.BucketCount(), 0);
    for (const auto& [uid, total] : per_user_) {
      ++counts[spec_.BucketOf(static_cast<double>(total))];
    }
    return MakeHistogram(spec_, "users", std::move(counts));
  }

 private:
  HistogramSpec spec_;
  std::unordered_map<std::uint32_t, std::uint64_t> per_user_;
};

class UserDistinct {
 public:
  UserDistinct(HistogramSpec spec, DistinctMode mode)
      : spec_(std::move(spec)), mode_(mode) {}

  void Observe(const ProcessRecord& r) {
    auto it = per_user_.find(r.uid);
    if (it == per_user_.end()) {
      it = per_user_.emplace(r.uid, DistinctCounter(mode_)).first;
    }
    it->second.Add(r.comm);
  }

  ReportPayload Finalize() const {
    std::vector<std::uint64_t> counts(spec_.BucketCount(), 0);
    for (const auto& [uid, distinct] : per_user_) {
      ++counts[spec_.BucketOf(static_cast<double>(distinct.Count()))];
    }
    return MakeHistogram(spec_, "users", std::move(counts));
  }

 private:
  HistogramSpec spec_;
  DistinctMode mode_;
  std::unordered_map<std::uint32_t, DistinctCounter> per_user_;
};

class TopTotal {
 public:
  void Observe(const ProcessRecord& r) {
    ++total_;
    ++counts_[r.comm];
  }

  ReportPayload Finalize() const {
    return RankTop(counts_, RankMetric::kInstanceCount, total_);
  }

 private:
  std::uint64_t total_ = 0;
  std::unordered_map<std::string, std::uint64_t> counts_;
};

class TopDistinctUsers {
 public:
  void Observe(const ProcessRecord& r) {
    users_.insert(r.uid);
    users_by_comm_[r.comm].insert(r.uid);
  }

  ReportPayload Finalize() const {
    std::vector<std::pair<std::string, std::uint64_t>> counts;
    counts.reserve(users_by_comm_.size());
    for (const auto& [comm, uids] : users_by_comm_) {
      counts.emplace_back(comm, uids.size());
    }
    return RankTop(counts, RankMetric::kDistinctUserCount, users_.size());
  }

 private:
  std::unordered_set<std::uint32_t> users_;
  std::unordered_map<std::string, std::unordered_set<std::uint32_t>>
      users_by_comm_;
};

class FieldHistogram {
 public:
  FieldHistogram(HistogramSpec spec, double ProcessRecord::*field)
      : spec_(std::move(spec)), field_(field), counts_(spec_.BucketCount(), 0) {}

  void Observe(const ProcessRecord& r) { ++counts_[spec_.BucketOf(r.*field_)]; }

  ReportPayload Finalize() const {
    return MakeHistogram(spec_, "commands", counts_);
  }

 private:
  HistogramSpec spec_;
  double ProcessRecord::*field_;
  std::vector<std::uint64_t> counts_;
};

// Exact per-value counts; edges chosen once the range is known.
class AdaptiveMemory {
 public:
  explicit AdaptiveMemory(HistogramSpec spec) : spec_(std::move(spec)) {}

  void Observe(const ProcessRecord& r) { ++values_[r.mem_pages]; }

  ReportPayload Finalize() const {
    HistogramSpec spec = spec_;
    spec.edges = AdaptiveEdges(values_.empty()
                                   ? std::nullopt
                                   : std::optional(values_.rbegin()->first));
    std::vector<std::uint64_t> counts(spec.BucketCount(), 0);
    for (const auto& [value, n] : values_) counts[spec.BucketOf(value)] += n;
    return MakeHistogram(std::move(spec), "commands", std::move(counts));
  }

 private:
  HistogramSpec spec_;
  std::map<double, std::uint64_t> values_;
};

ReportRegistration TimeHistogram(std::string_view name, HistogramSpec spec,
                                 double ProcessRecord::*field) {
  spec.Validate();
  return Register(name, std::make_shared<FieldHistogram>(std::move(spec), field));
}

}  // namespace

const ReportInfo& StandardReportInfo(std::string_view name) {
  for (const ReportInfo& info : kReportInfo) {
    if (info.name == name) return info;
  }
  throw std::out_of_range("unknown report '" + std::string(name) + "'");
}

bool IsStandardReport(std::string_view name) {
  return std::find(kStandardReportNames.begin(), kStandardReportNames.end(),
                   name) != kStandardReportNames.end();
}

HistogramSpec DefaultSpec(std::string_view report_name) {
  const std::string name(report_name);
  if (name == "users_total") {
    return {name, {0, 20, 40, 70, 150, 500}, "commands"};
  }
  if (name == "users_distinct") {
    return {name, {0, 5, 10, 15, 20, 25, 30}, "commands"};
  }
  if (name == "stime") return {name, {0, 0.1, 0.5, 1, 2, 4, 6, 8, 10}, "s"};
  if (name == "utime") return {name, {0, 1, 2, 4, 8, 16}, "s"};
  if (name == "etime") {
    return {name, {0, 2, 4, 6, 10, 20, 50, 100, 200, 400}, "s"};
  }
  if (name == "memory") {
    return {name, {0, 100, 500, 1000, 2000, 7000}, "pages"};
  }
  throw std::out_of_range("no histogram spec for '" + name + "'");
}

HistogramSpec AdaptiveMemorySpec() {
  return HistogramSpec{"memory", {}, "pages", true};
}

ReportRegistration GeneralReport(DistinctMode mode) {
  return Register("general", std::make_shared<General>(mode));
}

ReportRegistration UserTotalHistogram(HistogramSpec spec) {
  spec.Validate();
  return Register("users_total", std::make_shared<UserTotals>(std::move(spec)));
}

ReportRegistration UserDistinctHistogram(HistogramSpec spec,
                                         DistinctMode mode) {
  spec.Validate();
  return Register("users_distinct",
                  std::make_shared<UserDistinct>(std::move(spec), mode));
}

ReportRegistration Top20Total() {
  return Register("top20_total", std::make_shared<TopTotal>());
}

ReportRegistration Top20DistinctUsers() {
  return Register("top20_distinct", std::make_shared<TopDistinctUsers>());
}

ReportRegistration StimeHistogram(HistogramSpec spec) {
  return TimeHistogram("stime", std::move(spec), &ProcessRecord::stime_s);
}

ReportRegistration UtimeHistogram(HistogramSpec spec) {
  return TimeHistogram("utime", std::move(spec), &ProcessRecord::utime_s);
}

ReportRegistration EtimeHistogram(HistogramSpec spec) {
  return TimeHistogram("etime", std::move(spec), &ProcessRecord::etime_s);
}

ReportRegistration MemoryHistogram(HistogramSpec spec) {
  spec.Validate();
  if (spec.adaptive) {
    return Register("memory", std::make_shared<AdaptiveMemory>(std::move(spec)));
  }
  return Register("memory", std::make_shared<FieldHistogram>(
                                std::move(spec), &ProcessRecord::mem_pages));
}

ReportRegistration MakeStandardReport(std::string_view name,
                                      const ReportOptions& options) {
  if (name == "general") return GeneralReport(options.distinct_mode);
  if (name == "users_total") return UserTotalHistogram(options.users_total);
  if (name == "users_distinct") {
    return UserDistinctHistogram(options.users_distinct, options.distinct_mode);
  }
  if (name == "top20_total") return Top20Total();
  if (name == "top20_distinct") return Top20DistinctUsers();
  if (name == "stime") return StimeHistogram(options.stime);
  if (name == "utime") return UtimeHistogram(options.utime);
  if (name == "etime") return EtimeHistogram(options.etime);
  if (name == "memory") return MemoryHistogram(options.memory);
  throw std::out_of_range("unknown report '" + std::string(name) + "'");
}

std::vector<ReportRegistration> StandardReports(const ReportOptions& options) {
  std::vector<ReportRegistration> regs;
  regs.reserve(kStandardReportNames.size());
  for (std::string_view name : kStandardReportNames) {
    regs.push_back(MakeStandardReport(name, options));
  }
  return regs;
}

}  // namespace acctlens

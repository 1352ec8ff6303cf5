#include "acctlens/features.h"

#include <algorithm>
#include <string>

#include "acctlens/reports.h"

namespace acctlens {
namespace {

constexpr std::array<const char*, UserAggregate::kMetricCount> kMetricNames = {
    "stime", "utime", "etime", "mem"};

std::uint64_t SeedFor(std::uint32_t uid) {
  return 0x9E3779B97F4A7C15ull ^ (static_cast<std::uint64_t>(uid) << 17 | uid);
}

__extension__ typedef unsigned __int128 Uint128;

// Uniform integer in [0, bound) from one 64-bit draw.
std::uint64_t Below(std::mt19937_64& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>(
      (static_cast<Uint128>(rng()) * bound) >> 64);
}

MetricSummary Summarize(const UserAggregate& agg, UserAggregate::Metric m) {
  MetricSummary s;
  const double n = static_cast<double>(agg.total_commands());
  s.mean = n > 0 ? agg.Sum(m) / n : 0;
  s.median = agg.Median(m);
  s.max = agg.Max(m);
  return s;
}

std::vector<double> Fractions(const std::vector<std::uint64_t>& counts,
                              std::uint64_t total) {
  std::vector<double> out;
  out.reserve(counts.size());
  for (std::uint64_t c : counts) {
    out.push_back(total ? static_cast<double>(c) / static_cast<double>(total)
                        : 0.0);
  }
  return out;
}

}  // namespace

FeatureSpecs DefaultFeatureSpecs() {
  return FeatureSpecs{DefaultSpec("stime"), DefaultSpec("utime"),
                      DefaultSpec("etime"), 1024};
}

UserAggregate::UserAggregate(std::uint32_t uid, const FeatureSpecs& specs)
    : uid_(uid), capacity_(specs.reservoir_size), rng_(SeedFor(uid)) {
  buckets_[kStime].assign(specs.stime.BucketCount(), 0);
  buckets_[kUtime].assign(specs.utime.BucketCount(), 0);
  buckets_[kEtime].assign(specs.etime.BucketCount(), 0);
}

void UserAggregate::Observe(const ProcessRecord& r, const FeatureSpecs& specs) {
  const Sample sample = {r.stime_s, r.utime_s, r.etime_s, r.mem_pages};
  for (std::size_t m = 0; m < kMetricCount; ++m) {
    sums_[m] += sample[m];
    maxima_[m] = total_ == 0 ? sample[m] : std::max(maxima_[m], sample[m]);
  }
  ++buckets_[kStime][specs.stime.BucketOf(r.stime_s)];
  ++buckets_[kUtime][specs.utime.BucketOf(r.utime_s)];
  ++buckets_[kEtime][specs.etime.BucketOf(r.etime_s)];
  if (r.flags.superuser) ++superuser_;
  distinct_.insert(r.comm);

  if (reservoir_.size() < capacity_) {
    reservoir_.push_back(sample);
  } else if (capacity_ > 0) {
    const std::uint64_t j = Below(rng_, total_ + 1);
    if (j < capacity_) reservoir_[j] = sample;
  }
  ++total_;
}

double UserAggregate::Median(Metric m) const {
  if (reservoir_.empty()) return 0;
  std::vector<double> values;
  values.reserve(reservoir_.size());
  for (const Sample& s : reservoir_) values.push_back(s[m]);
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
}

std::vector<std::string> FeatureTable::Columns() const {
  std::vector<std::string> cols = {"uid", "user", "total_commands",
                                   "distinct_commands"};
  for (const char* metric : kMetricNames) {
    for (const char* stat : {"mean", "median", "max"}) {
      cols.push_back(std::string(metric) + "_" + stat);
    }
  }
  const auto add_family = [&](const char* family,
                              const std::vector<std::string>& labels) {
    for (const std::string& label : labels) {
      cols.push_back(std::string(family) + "_frac_" + label);
    }
  };
  add_family("stime", stime_labels);
  add_family("utime", utime_labels);
  add_family("etime", etime_labels);
  cols.push_back("superuser_fraction");
  return cols;
}

// Values for Columns() from "total_commands" onward.
std::vector<double> FeatureTable::NumericValues(const FeatureRow& row) const {
  std::vector<double> v = {static_cast<double>(row.total_commands),
                           static_cast<double>(row.distinct_commands)};
  for (const MetricSummary* s : {&row.stime, &row.utime, &row.etime, &row.mem}) {
    v.insert(v.end(), {s->mean, s->median, s->max});
  }
  v.insert(v.end(), row.stime_fractions.begin(), row.stime_fractions.end());
  v.insert(v.end(), row.utime_fractions.begin(), row.utime_fractions.end());
  v.insert(v.end(), row.etime_fractions.begin(), row.etime_fractions.end());
  v.push_back(row.superuser_fraction);
  return v;
}

FeatureTable ExtractUserFeatures(const UserAggregates& aggregates,
                                 const FeatureSpecs& specs,
                                 const UserNames* names) {
  FeatureTable table;
  table.stime_labels = specs.stime.Labels();
  table.utime_labels = specs.utime.Labels();
  table.etime_labels = specs.etime.Labels();
  table.rows.reserve(aggregates.size());
  for (const auto& [uid, agg] : aggregates) {
    FeatureRow row;
    row.uid = uid;
    if (names) {
      if (auto it = names->find(uid); it != names->end()) row.user = it->second;
    }
    row.total_commands = agg.total_commands();
    row.distinct_commands = agg.distinct_commands();
    row.stime = Summarize(agg, UserAggregate::kStime);
    row.utime = Summarize(agg, UserAggregate::kUtime);
    row.etime = Summarize(agg, UserAggregate::kEtime);
    row.mem = Summarize(agg, UserAggregate::kMem);
    const std::uint64_t total = agg.total_commands();
    row.stime_fractions = Fractions(agg.TimeBuckets(UserAggregate::kStime), total);
    row.utime_fractions = Fractions(agg.TimeBuckets(UserAggregate::kUtime), total);
    row.etime_fractions = Fractions(agg.TimeBuckets(UserAggregate::kEtime), total);
    row.superuser_fraction =
        total ? static_cast<double>(agg.superuser_commands()) / total : 0.0;
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

class FeaturesState {
 public:
  FeaturesState(FeatureSpecs specs, std::shared_ptr<const UserNames> names)
      : specs_(std::move(specs)), names_(std::move(names)) {}

  void Observe(const ProcessRecord& r) {
    auto it = aggregates_.find(r.uid);
    if (it == aggregates_.end()) {
      it = aggregates_.emplace(r.uid, UserAggregate(r.uid, specs_)).first;
    }
    it->second.Observe(r, specs_);
  }

  FeatureTable Finalize() const {
    return ExtractUserFeatures(aggregates_, specs_, names_.get());
  }

 private:
  FeatureSpecs specs_;
  std::shared_ptr<const UserNames> names_;
  UserAggregates aggregates_;
};

}  // namespace

ReportRegistration UserFeaturesReport(FeatureSpecs specs,
                                      std::shared_ptr<const UserNames> names) {
  specs.stime.Validate();
  specs.utime.Validate();
  specs.etime.Validate();
  auto state = std::make_shared<FeaturesState>(std::move(specs), std::move(names));
  return ReportRegistration{
      std::string(kFeaturesReportName),
      [state](const ProcessRecord& r) { state->Observe(r); },
      [state] {
        const ReportInfo& info = StandardReportInfo(kFeaturesReportName);
        return ReportOutput{std::string(info.name), std::string(info.title),
                            std::string(info.x_label),
                            std::string(info.y_label), state->Finalize()};
      }};
}

}  // namespace acctlens

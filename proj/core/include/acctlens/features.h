#ifndef ACCTLENS_FEATURES_H_
#define ACCTLENS_FEATURES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "acctlens/engine.h"
#include "acctlens/format.h"
#include "acctlens/histogram.h"
#include "acctlens/passwd.h"
#include "acctlens/report_types.h"

namespace acctlens {

struct FeatureSpecs {
  HistogramSpec stime;
  HistogramSpec utime;
  HistogramSpec etime;
  std::size_t reservoir_size = 1024;
};

// Default specs: the standard report defaults, 1024-sample reservoir.
FeatureSpecs DefaultFeatureSpecs();

// Running per-uid state. Medians come from a uniform reservoir of records
// (Algorithm R), seeded from the uid so output is reproducible.
class UserAggregate {
 public:
  enum Metric : std::size_t { kStime = 0, kUtime, kEtime, kMem, kMetricCount };
  using Sample = std::array<double, kMetricCount>;

  UserAggregate(std::uint32_t uid, const FeatureSpecs& specs);

  void Observe(const ProcessRecord& record, const FeatureSpecs& specs);

  std::uint32_t uid() const { return uid_; }
  std::uint64_t total_commands() const { return total_; }
  std::uint64_t distinct_commands() const { return distinct_.size(); }
  std::uint64_t superuser_commands() const { return superuser_; }
  double Sum(Metric m) const { return sums_[m]; }
  double Max(Metric m) const { return maxima_[m]; }
  const std::vector<Sample>& reservoir() const { return reservoir_; }
  // Bucket counts for the stime, utime and etime families.
  const std::vector<std::uint64_t>& TimeBuckets(Metric m) const {
    return buckets_[m];
  }

  // Median of metric m over the reservoir (exact while total <= capacity).
  double Median(Metric m) const;

 private:
  std::uint32_t uid_;
  std::uint64_t total_ = 0;
  std::uint64_t superuser_ = 0;
  std::unordered_set<std::string> distinct_;
  Sample sums_{};
  Sample maxima_{};
  std::array<std::vector<std::uint64_t>, 3> buckets_;
  std::size_t capacity_;
  std::vector<Sample> reservoir_;
  std::mt19937_64 rng_;
};

using UserAggregates = std::map<std::uint32_t, UserAggregate>;

// One row per observed uid, ascending.
FeatureTable ExtractUserFeatures(const UserAggregates& aggregates,
                                 const FeatureSpecs& specs,
                                 const UserNames* names = nullptr);

// Registration named "features" producing a FeatureTable.
ReportRegistration UserFeaturesReport(
    FeatureSpecs specs = DefaultFeatureSpecs(),
    std::shared_ptr<const UserNames> names = nullptr);

}  // namespace acctlens

#endif  // ACCTLENS_FEATURES_H_

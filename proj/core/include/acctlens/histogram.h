#ifndef ACCTLENS_HISTOGRAM_H_
#define ACCTLENS_HISTOGRAM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace acctlens {

// Bucket layout. Bucket i covers [edges[i], edges[i+1]); the last bucket is
// open-ended (">edges.back()"). A fixed spec needs edges[0] == 0 so every
// nonnegative value lands in exactly one bucket. An adaptive spec carries
// no edges until its report picks them at finalize time.
struct HistogramSpec {
  std::string name;
  std::vector<double> edges;
  std::string unit;
  bool adaptive = false;

  std::size_t BucketCount() const { return edges.size(); }
  std::size_t BucketOf(double value) const;
  std::optional<double> UpperEdge(std::size_t bucket) const;
  // "0-20", "0.1-0.5", ">500".
  std::string Label(std::size_t bucket) const;
  std::vector<std::string> Labels() const;

  // Throws InvalidSpec.
  void Validate() const;

  friend bool operator==(const HistogramSpec&, const HistogramSpec&) = default;
};

// Shortest fixed-notation spelling of an edge value ("0.1", "7000").
std::string FormatEdge(double value);

// Edges for a value range [0, max_value]: 0 and multiples of a 1-2-5 step
// chosen for roughly eight buckets. A single {0} edge when there is no data.
std::vector<double> AdaptiveEdges(std::optional<double> max_value);

struct Histogram {
  HistogramSpec spec;
  std::string population;  // what one count is: "users" or "commands"
  std::vector<std::uint64_t> counts;
  std::vector<double> percents;  // exact, 100 * count / total
  std::uint64_t total = 0;
};

Histogram MakeHistogram(HistogramSpec spec, std::string population,
                        std::vector<std::uint64_t> counts);

// Integer percent for display, rounding halves up.
int DisplayPercent(double exact_percent);

}  // namespace acctlens

#endif  // ACCTLENS_HISTOGRAM_H_

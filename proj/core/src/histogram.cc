#include "acctlens/histogram.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "acctlens/errors.h"

namespace acctlens {

std::string FormatEdge(double value) {
  char buf[64];
  const auto result =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
  return std::string(buf, result.ptr);
}

std::size_t HistogramSpec::BucketOf(double value) const {
  // First edge greater than value, minus one. NaN and negatives land in 0.
  const auto it = std::upper_bound(edges.begin(), edges.end(), value);
  if (it == edges.begin()) return 0;
  return static_cast<std::size_t>(it - edges.begin()) - 1;
}

std::optional<double> HistogramSpec::UpperEdge(std::size_t bucket) const {
  if (bucket + 1 >= edges.size()) return std::nullopt;
  return edges[bucket + 1];
}

std::string HistogramSpec::Label(std::size_t bucket) const {
  if (bucket + 1 >= edges.size()) return ">" + FormatEdge(edges.at(bucket));
  return FormatEdge(edges[bucket]) + "-" + FormatEdge(edges[bucket + 1]);
}

std::vector<std::string> HistogramSpec::Labels() const {
  std::vector<std::string> labels;
  labels.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) labels.push_back(Label(i));
  return labels;
}

void HistogramSpec::Validate() const {
  if (adaptive) {
    if (!edges.empty()) {
      throw InvalidSpec("histogram '" + name +
                        "': adaptive spec must not list edges");
    }
    return;
  }
  if (edges.size() < 2) {
    throw InvalidSpec("histogram '" + name + "' needs at least 2 edges");
  }
  if (edges.front() != 0) {
    throw InvalidSpec("histogram '" + name + "' must start at 0");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!std::isfinite(edges[i])) {
      throw InvalidSpec("histogram '" + name + "' has a non-finite edge");
    }
    if (i > 0 && edges[i] <= edges[i - 1]) {
      throw InvalidSpec("histogram '" + name +
                        "' edges must be strictly increasing");
    }
  }
}

std::vector<double> AdaptiveEdges(std::optional<double> max_value) {
  if (!max_value) return {0.0};
  const double max = std::max(*max_value, 0.0);
  double step = 1;
  if (max > 0) {
    const double raw = max / 8;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / magnitude;
    const double nice = norm <= 1 ? 1 : norm <= 2 ? 2 : norm <= 5 ? 5 : 10;
    step = nice * magnitude;
  }
  std::vector<double> edges;
  for (int k = 0;; ++k) {
    const double edge = k * step;
    if (k >= 2 && edge > max) break;
    edges.push_back(edge);
  }
  return edges;
}

Histogram MakeHistogram(HistogramSpec spec, std::string population,
                        std::vector<std::uint64_t> counts) {
  Histogram h;
  h.spec = std::move(spec);
  h.population = std::move(population);
  h.counts = std::move(counts);
  for (std::uint64_t c : h.counts) h.total += c;
  h.percents.reserve(h.counts.size());
  for (std::uint64_t c : h.counts) {
    h.percents.push_back(h.total == 0 ? 0.0
                                      : 100.0 * static_cast<double>(c) /
                                            static_cast<double>(h.total));
  }
  return h;
}

int DisplayPercent(double exact_percent) {
  return static_cast<int>(std::floor(exact_percent + 0.5));
}

}  // namespace acctlens

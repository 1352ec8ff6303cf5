#include "acctlens/compare.h"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "acctlens/errors.h"

namespace acctlens {
namespace {

using Json = nlohmann::ordered_json;

const ReportOutput* Find(std::span<const ReportOutput> list,
                         const std::string& name) {
  for (const ReportOutput& out : list) {
    if (out.name == name) return &out;
  }
  return nullptr;
}

HistogramDelta Delta(const std::string& name, const Histogram& a,
                     const Histogram& b) {
  HistogramDelta d;
  d.name = name;
  d.comparable = a.spec.edges == b.spec.edges;
  if (!d.comparable) return d;
  d.labels = a.spec.Labels();
  for (std::size_t i = 0; i < a.percents.size(); ++i) {
    d.percent_delta.push_back(b.percents[i] - a.percents[i]);
  }
  return d;
}

RankingOverlap Overlap(const std::string& name, const RankedList& a,
                       const RankedList& b) {
  std::set<std::string> in_b;
  for (const RankedEntry& e : b.entries) in_b.insert(e.label);
  std::set<std::string> in_a;
  RankingOverlap o;
  o.name = name;
  for (const RankedEntry& e : a.entries) {
    in_a.insert(e.label);
    (in_b.count(e.label) ? o.shared : o.only_a).push_back(e.label);
  }
  for (const RankedEntry& e : b.entries) {
    if (!in_a.count(e.label)) o.only_b.push_back(e.label);
  }
  return o;
}

std::optional<double> Ratio(double a, double b) {
  if (a == 0) return std::nullopt;
  return b / a;
}

std::string OptionalText(const std::optional<double>& v) {
  return v ? fmt::format("{:.4f}", *v) : std::string("n/a");
}

Json OptionalJson(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string JoinList(const std::vector<std::string>& items) {
  std::string s;
  for (const std::string& item : items) s += (s.empty() ? "" : " ") + item;
  return s.empty() ? "-" : s;
}

}  // namespace

ComparisonResult CompareReports(std::span<const ReportOutput> a,
                                std::span<const ReportOutput> b) {
  ComparisonResult result;
  for (const ReportOutput& out : a) {
    const ReportOutput* other = Find(b, out.name);
    if (!other) {
      result.only_in_a.push_back(out.name);
      continue;
    }
    result.pairs.push_back({out, *other});
  }
  for (const ReportOutput& out : b) {
    if (!Find(a, out.name)) result.only_in_b.push_back(out.name);
  }

  for (const ReportPair& pair : result.pairs) {
    const ReportPayload& pa = pair.a.payload;
    const ReportPayload& pb = pair.b.payload;
    if (const auto* ga = std::get_if<GeneralSummary>(&pa)) {
      if (const auto* gb = std::get_if<GeneralSummary>(&pb)) {
        result.total_command_ratio =
            Ratio(static_cast<double>(ga->total_commands),
                  static_cast<double>(gb->total_commands));
        result.distinct_ratio_ratio = Ratio(ga->distinct_ratio, gb->distinct_ratio);
        if (result.distinct_ratio_ratio && *result.distinct_ratio_ratio > 0) {
          const double r = *result.distinct_ratio_ratio;
          // Relative slack so an exact 5x (0.002 vs 0.0004) survives rounding.
          result.distinct_ratio_order_of_magnitude =
              std::max(r, 1 / r) >= kMagnitudeFlagFactor;
        }
      }
    } else if (const auto* ha = std::get_if<Histogram>(&pa)) {
      if (const auto* hb = std::get_if<Histogram>(&pb)) {
        result.histogram_deltas.push_back(Delta(pair.a.name, *ha, *hb));
      }
    } else if (const auto* ra = std::get_if<RankedList>(&pa)) {
      if (const auto* rb = std::get_if<RankedList>(&pb)) {
        result.ranking_overlaps.push_back(Overlap(pair.a.name, *ra, *rb));
      }
    }
  }
  return result;
}

std::string RenderComparison(const ComparisonResult& result,
                             RenderFormat format, std::string_view label_a,
                             std::string_view label_b) {
  if (format == RenderFormat::kJson) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["a"] = label_a;
    j["b"] = label_b;
    Json paired = Json::array();
    for (const ReportPair& p : result.pairs) paired.push_back(p.a.name);
    j["paired"] = std::move(paired);
    j["only_in_a"] = result.only_in_a;
    j["only_in_b"] = result.only_in_b;
    j["total_command_ratio"] = OptionalJson(result.total_command_ratio);
    j["distinct_ratio_ratio"] = OptionalJson(result.distinct_ratio_ratio);
    j["distinct_ratio_order_of_magnitude"] =
        result.distinct_ratio_order_of_magnitude;
    Json deltas = Json::array();
    for (const HistogramDelta& d : result.histogram_deltas) {
      deltas.push_back({{"name", d.name},
                        {"comparable", d.comparable},
                        {"labels", d.labels},
                        {"percent_delta", d.percent_delta}});
    }
    j["histogram_deltas"] = std::move(deltas);
    Json overlaps = Json::array();
    for (const RankingOverlap& o : result.ranking_overlaps) {
      overlaps.push_back({{"name", o.name},
                          {"shared", o.shared},
                          {"only_a", o.only_a},
                          {"only_b", o.only_b}});
    }
    j["ranking_overlaps"] = std::move(overlaps);
    return j.dump(2) + "\n";
  }
  if (format != RenderFormat::kText) {
    throw IncompatibleRender("comparison renders only as text or json");
  }

  std::string s = fmt::format("A: {}\nB: {}\n\n", label_a, label_b);
  s += fmt::format("Total commands ratio (B/A):  {}\n",
                   OptionalText(result.total_command_ratio));
  s += fmt::format("Distinct ratio ratio (B/A):  {}{}\n",
                   OptionalText(result.distinct_ratio_ratio),
                   result.distinct_ratio_order_of_magnitude
                       ? "  [order of magnitude]"
                       : "");
  for (const HistogramDelta& d : result.histogram_deltas) {
    s += fmt::format("\n{} (percent points, B - A)\n", d.name);
    if (!d.comparable) {
      s += "  bucket edges differ; not comparable\n";
      continue;
    }
    for (std::size_t i = 0; i < d.labels.size(); ++i) {
      s += fmt::format("  {:<12} {:+8.2f}\n", d.labels[i], d.percent_delta[i]);
    }
  }
  for (const RankingOverlap& o : result.ranking_overlaps) {
    s += fmt::format("\n{}\n  shared: {}\n  only A: {}\n  only B: {}\n", o.name,
                     JoinList(o.shared), JoinList(o.only_a), JoinList(o.only_b));
  }
  if (!result.only_in_a.empty() || !result.only_in_b.empty()) {
    s += fmt::format("\nunpaired: A {} / B {}\n", JoinList(result.only_in_a),
                     JoinList(result.only_in_b));
  }
  return s;
}

}  // namespace acctlens

#include "acctlens/render.h"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "acctlens/errors.h"

namespace acctlens {
namespace {

using Json = nlohmann::ordered_json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr int kBarWidth = 50;

std::string_view KindName(const ReportPayload& payload) {
  return std::visit(
      Overloaded{[](const GeneralSummary&) { return "general"; },
                 [](const Histogram&) { return "histogram"; },
                 [](const RankedList&) { return "ranking"; },
                 [](const FeatureTable&) { return "features"; },
                 [](const ReportFailure&) { return "failure"; }},
      payload);
}

std::string_view MetricName(RankMetric m) {
  return m == RankMetric::kInstanceCount ? "instance_count"
                                         : "distinct_user_count";
}

double RankPercent(const RankedEntry& e, std::uint64_t universe) {
  return universe ? 100.0 * static_cast<double>(e.count) /
                        static_cast<double>(universe)
                  : 0.0;
}

Json OptionalNumber(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json OptionalTimestamp(const std::optional<double>& v) {
  return v ? Json(FormatTimestamp(*v)) : Json(nullptr);
}

// ---------------------------------------------------------------- JSON

Json PayloadJson(const GeneralSummary& g) {
  Json j;
  j["total_commands"] = g.total_commands;
  j["distinct_commands"] = g.distinct_commands;
  j["distinct_estimated"] = g.distinct_estimated;
  j["first_event"] = OptionalNumber(g.first_event);
  j["first_event_utc"] = OptionalTimestamp(g.first_event);
  j["last_event"] = OptionalNumber(g.last_event);
  j["last_event_utc"] = OptionalTimestamp(g.last_event);
  j["period_days"] = g.period_days;
  j["period_days_ceil"] = g.period_days_ceil;
  j["distinct_ratio"] = g.distinct_ratio;
  return j;
}

Json PayloadJson(const Histogram& h) {
  Json j;
  j["unit"] = h.spec.unit;
  j["population"] = h.population;
  j["adaptive"] = h.spec.adaptive;
  j["edges"] = h.spec.edges;
  j["labels"] = h.spec.Labels();
  j["counts"] = h.counts;
  j["percents"] = h.percents;
  std::vector<int> display;
  for (double p : h.percents) display.push_back(DisplayPercent(p));
  j["display_percents"] = display;
  j["total"] = h.total;
  return j;
}

Json PayloadJson(const RankedList& r) {
  Json j;
  j["metric"] = MetricName(r.metric);
  j["universe"] = r.universe;
  Json entries = Json::array();
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const RankedEntry& e = r.entries[i];
    entries.push_back({{"rank", i + 1},
                       {"command", e.label},
                       {"count", e.count},
                       {"percent", RankPercent(e, r.universe)}});
  }
  j["entries"] = std::move(entries);
  return j;
}

Json PayloadJson(const FeatureTable& t) {
  Json j;
  const std::vector<std::string> columns = t.Columns();
  j["columns"] = columns;
  Json rows = Json::array();
  for (const FeatureRow& row : t.rows) {
    Json obj;
    obj["uid"] = row.uid;
    obj["user"] = row.user;
    const std::vector<double> values = t.NumericValues(row);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i < 2) {
        obj[columns[i + 2]] = static_cast<std::uint64_t>(values[i]);
      } else {
        obj[columns[i + 2]] = values[i];
      }
    }
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  return j;
}

Json PayloadJson(const ReportFailure& f) { return Json{{"error", f.message}}; }

Json ReportJson(const ReportOutput& out, bool with_version) {
  Json j;
  if (with_version) j["schema_version"] = kSchemaVersion;
  j["name"] = out.name;
  j["kind"] = KindName(out.payload);
  j["title"] = out.title;
  j["x_label"] = out.x_label;
  j["y_label"] = out.y_label;
  Json body = std::visit([](const auto& p) { return PayloadJson(p); },
                         out.payload);
  for (auto& [key, value] : body.items()) j[key] = value;
  return j;
}

// ----------------------------------------------------------------- CSV

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string OptionalCsv(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

std::string Csv(const GeneralSummary& g) {
  std::string out = "field,value\n";
  out += fmt::format("total_commands,{}\n", g.total_commands);
  out += fmt::format("distinct_commands,{}\n", g.distinct_commands);
  out += fmt::format("distinct_estimated,{}\n", g.distinct_estimated);
  out += fmt::format("first_event,{}\n", OptionalCsv(g.first_event));
  out += fmt::format("last_event,{}\n", OptionalCsv(g.last_event));
  out += fmt::format("period_days,{}\n", g.period_days);
  out += fmt::format("period_days_ceil,{}\n", g.period_days_ceil);
  out += fmt::format("distinct_ratio,{}\n", g.distinct_ratio);
  return out;
}

std::string Csv(const Histogram& h) {
  std::string out = "bucket,lower,upper,count,percent\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const std::optional<double> upper = h.spec.UpperEdge(i);
    out += fmt::format("{},{},{},{},{}\n", CsvField(h.spec.Label(i)),
                       h.spec.edges[i], OptionalCsv(upper), h.counts[i],
                       h.percents[i]);
  }
  return out;
}

std::string Csv(const RankedList& r) {
  std::string out = "rank,command,count,percent\n";
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const RankedEntry& e = r.entries[i];
    out += fmt::format("{},{},{},{}\n", i + 1, CsvField(e.label), e.count,
                       RankPercent(e, r.universe));
  }
  return out;
}

std::string Csv(const FeatureTable& t) {
  std::string out;
  const std::vector<std::string> columns = t.Columns();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out += (i ? "," : "") + columns[i];
  }
  out += '\n';
  for (const FeatureRow& row : t.rows) {
    out += fmt::format("{},{}", row.uid, CsvField(row.user));
    for (double v : t.NumericValues(row)) out += fmt::format(",{}", v);
    out += '\n';
  }
  return out;
}

std::string Csv(const ReportFailure& f) {
  return "error\n" + CsvField(f.message) + "\n";
}

// ---------------------------------------------------------------- Text

std::string Bar(double percent) {
  const auto n = static_cast<int>(std::lround(percent * kBarWidth / 100.0));
  if (n <= 0) return {};
  return "  " + std::string(static_cast<std::size_t>(std::min(n, kBarWidth)), '#');
}

std::string OptionalTimeText(const std::optional<double>& v) {
  return v ? FormatTimestamp(*v) : std::string("-");
}

std::string Text(const GeneralSummary& g) {
  std::string out;
  out += fmt::format("  Total commands:     {}\n", g.total_commands);
  out += fmt::format("  Distinct commands:  {}{}\n", g.distinct_commands,
                     g.distinct_estimated ? " (estimated)" : "");
  out += fmt::format("  First event:        {}\n", OptionalTimeText(g.first_event));
  out += fmt::format("  Last event:         {}\n", OptionalTimeText(g.last_event));
  out += fmt::format("  Period (days):      {:.2f} ({})\n", g.period_days,
                     g.period_days_ceil);
  out += fmt::format("  Distinct ratio:     {:.4f}\n", g.distinct_ratio);
  return out;
}

std::string Text(const Histogram& h) {
  std::size_t width = 6;
  for (const std::string& l : h.spec.Labels()) width = std::max(width, l.size());
  std::string out = fmt::format("  {:<{}}  {:>10}  {:>4}\n", "bucket", width,
                                "count", "%");
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out += fmt::format("  {:<{}}  {:>10}  {:>3}%{}\n", h.spec.Label(i), width,
                       h.counts[i], DisplayPercent(h.percents[i]),
                       Bar(h.percents[i]));
  }
  out += fmt::format("  total {} {}\n", h.total, h.population);
  return out;
}

std::string Text(const RankedList& r) {
  std::size_t width = 7;
  for (const RankedEntry& e : r.entries) width = std::max(width, e.label.size());
  const char* count_name =
      r.metric == RankMetric::kInstanceCount ? "count" : "users";
  std::string out = fmt::format("  {:>4}  {:<{}}  {:>10}  {:>4}\n", "rank",
                                "command", width, count_name, "%");
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const RankedEntry& e = r.entries[i];
    const double pct = RankPercent(e, r.universe);
    out += fmt::format("  {:>4}  {:<{}}  {:>10}  {:>3}%{}\n", i + 1, e.label,
                       width, e.count, DisplayPercent(pct), Bar(pct));
  }
  return out;
}

std::string Text(const FeatureTable& t) {
  std::string out = "  ";
  const std::vector<std::string> columns = t.Columns();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out += (i ? "\t" : "") + columns[i];
  }
  out += '\n';
  for (const FeatureRow& row : t.rows) {
    out += fmt::format("  {}\t{}", row.uid, row.user.empty() ? "-" : row.user);
    for (double v : t.NumericValues(row)) out += fmt::format("\t{:.6g}", v);
    out += '\n';
  }
  return out;
}

std::string Text(const ReportFailure& f) {
  return "  FAILED: " + f.message + "\n";
}

std::string TextReport(const ReportOutput& out) {
  std::string s = out.title + "\n" + std::string(out.title.size(), '=') + "\n";
  s += std::visit([](const auto& p) { return Text(p); }, out.payload);
  return s;
}

// ----------------------------------------------------------------- SVG

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

struct ChartBar {
  std::string label;
  std::uint64_t count;
  double percent;
};

std::string SvgChart(const ReportOutput& out, const std::vector<ChartBar>& bars,
                     bool slanted_labels) {
  constexpr int kWidth = 720;
  constexpr int kHeight = 400;
  constexpr int kLeft = 60;
  constexpr int kRight = 20;
  constexpr int kTop = 40;
  const int bottom = slanted_labels ? 110 : 60;
  const int plot_w = kWidth - kLeft - kRight;
  const int plot_h = kHeight - kTop - bottom;
  double max_pct = 0;
  for (const ChartBar& b : bars) max_pct = std::max(max_pct, b.percent);
  const double scale_max = max_pct > 0 ? max_pct : 1;
  const double slot = bars.empty() ? plot_w : double(plot_w) / bars.size();
  const double bar_w = slot * 0.7;

  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"11\">\n",
      kWidth, kHeight);
  s += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n",
                   kWidth, kHeight);
  s += fmt::format(
      "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
      kWidth / 2, XmlEscape(out.title));
  s += fmt::format(
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#000000\"/>\n",
      kLeft, kTop, kTop + plot_h);
  s += fmt::format(
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#000000\"/>\n",
      kLeft, kTop + plot_h, kLeft + plot_w);
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const ChartBar& b = bars[i];
    const double h = plot_h * b.percent / scale_max * 0.9;
    const double x = kLeft + slot * i + (slot - bar_w) / 2;
    const double y = kTop + plot_h - h;
    const double cx = x + bar_w / 2;
    s += fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
        "fill=\"#4a7ab5\"/>\n",
        x, y, bar_w, h);
    s += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{} ({}%)</text>\n",
        cx, y - 4, b.count, DisplayPercent(b.percent));
    if (slanted_labels) {
      const double ly = kTop + plot_h + 12;
      s += fmt::format(
          "<text x=\"{0:.2f}\" y=\"{1:.2f}\" text-anchor=\"end\" "
          "transform=\"rotate(-45 {0:.2f} {1:.2f})\">{2}</text>\n",
          cx, ly, XmlEscape(b.label));
    } else {
      s += fmt::format(
          "<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", cx,
          kTop + plot_h + 16, XmlEscape(b.label));
    }
  }
  s += fmt::format(
      "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
      kLeft + plot_w / 2, kHeight - 10, XmlEscape(out.x_label));
  s += fmt::format(
      "<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 16 {0})\">{1}</text>\n",
      kTop + plot_h / 2, XmlEscape(out.y_label));
  s += "</svg>\n";
  return s;
}

std::string Svg(const ReportOutput& out) {
  if (const auto* h = std::get_if<Histogram>(&out.payload)) {
    std::vector<ChartBar> bars;
    for (std::size_t i = 0; i < h->counts.size(); ++i) {
      bars.push_back({h->spec.Label(i), h->counts[i], h->percents[i]});
    }
    return SvgChart(out, bars, false);
  }
  if (const auto* r = std::get_if<RankedList>(&out.payload)) {
    std::vector<ChartBar> bars;
    for (const RankedEntry& e : r->entries) {
      bars.push_back({e.label, e.count, RankPercent(e, r->universe)});
    }
    return SvgChart(out, bars, true);
  }
  throw IncompatibleRender("cannot render report '" + out.name + "' (" +
                           std::string(KindName(out.payload)) + ") as svg");
}

// ---------------------------------------------------------------- HTML

constexpr std::string_view kHtmlStyle =
    "body{font-family:sans-serif;margin:2em;color:#222}"
    "section{margin-bottom:2.5em}"
    "pre{background:#f4f4f4;padding:0.8em;overflow-x:auto}"
    "nav a{margin-right:1em}";

std::string HtmlSection(const ReportOutput& out) {
  std::string s = fmt::format("<section id=\"{}\">\n<h2>{}</h2>\n",
                              XmlEscape(out.name), XmlEscape(out.title));
  if (std::holds_alternative<Histogram>(out.payload) ||
      std::holds_alternative<RankedList>(out.payload)) {
    s += Svg(out);
  }
  s += "<pre>" +
       XmlEscape(std::visit([](const auto& p) { return Text(p); }, out.payload)) +
       "</pre>\n</section>\n";
  return s;
}

std::string HtmlPage(std::string_view title, std::string_view body) {
  return fmt::format(
      "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
      "<title>{0}</title>\n<style>{1}</style>\n</head>\n<body>\n<h1>{0}</h1>\n"
      "{2}</body>\n</html>\n",
      XmlEscape(title), kHtmlStyle, body);
}

Json MetadataJson(const RunMetadata& m) {
  Json j;
  j["records_read"] = m.records_read;
  j["source_format"] = m.source_format ? Json(std::string(ToString(*m.source_format)))
                                       : Json(nullptr);
  j["source_order"] = m.source_order ? Json(std::string(ToString(*m.source_order)))
                                     : Json(nullptr);
  j["time_relation_violations"] = m.time_relation_violations;
  j["warnings"] = m.warnings;
  return j;
}

std::string MetadataText(const RunMetadata& m) {
  std::string s = fmt::format("Records read: {}\n", m.records_read);
  if (m.source_format) {
    s += fmt::format("Format: {}", ToString(*m.source_format));
    if (m.source_order) s += fmt::format(" ({})", ToString(*m.source_order));
    s += '\n';
  }
  if (m.time_relation_violations) {
    s += fmt::format("Time relation violations: {}\n",
                     m.time_relation_violations);
  }
  return s;
}

}  // namespace

std::string_view ToString(RenderFormat format) {
  switch (format) {
    case RenderFormat::kText: return "text";
    case RenderFormat::kJson: return "json";
    case RenderFormat::kCsv: return "csv";
    case RenderFormat::kSvg: return "svg";
    case RenderFormat::kHtml: return "html";
  }
  return "?";
}

std::optional<RenderFormat> ParseRenderFormat(std::string_view text) {
  for (RenderFormat f : {RenderFormat::kText, RenderFormat::kJson,
                         RenderFormat::kCsv, RenderFormat::kSvg,
                         RenderFormat::kHtml}) {
    if (ToString(f) == text) return f;
  }
  return std::nullopt;
}

std::string FormatTimestamp(double epoch_seconds) {
  const auto t = static_cast<std::time_t>(std::floor(epoch_seconds));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string Render(const ReportOutput& output, RenderFormat format) {
  switch (format) {
    case RenderFormat::kText:
      return TextReport(output);
    case RenderFormat::kJson:
      return ReportJson(output, true).dump(2) + "\n";
    case RenderFormat::kCsv:
      return std::visit([](const auto& p) { return Csv(p); }, output.payload);
    case RenderFormat::kSvg:
      return Svg(output);
    case RenderFormat::kHtml:
      return HtmlPage(output.title, HtmlSection(output));
  }
  throw IncompatibleRender("unknown render format");
}

std::string RenderRun(const RunResult& run, RenderFormat format,
                      std::string_view title) {
  switch (format) {
    case RenderFormat::kText: {
      std::string s = MetadataText(run.metadata);
      for (const ReportOutput& out : run.outputs) s += "\n" + TextReport(out);
      return s;
    }
    case RenderFormat::kJson: {
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["metadata"] = MetadataJson(run.metadata);
      Json reports = Json::array();
      for (const ReportOutput& out : run.outputs) {
        reports.push_back(ReportJson(out, false));
      }
      j["reports"] = std::move(reports);
      return j.dump(2) + "\n";
    }
    case RenderFormat::kHtml: {
      std::string body = "<nav>";
      for (const ReportOutput& out : run.outputs) {
        body += fmt::format("<a href=\"#{}\">{}</a>", XmlEscape(out.name),
                            XmlEscape(out.title));
      }
      body += "</nav>\n<pre>" + XmlEscape(MetadataText(run.metadata)) + "</pre>\n";
      for (const ReportOutput& out : run.outputs) body += HtmlSection(out);
      return HtmlPage(title, body);
    }
    case RenderFormat::kCsv:
    case RenderFormat::kSvg:
      break;
  }
  throw IncompatibleRender("a whole run renders only as text, json or html");
}

}  // namespace acctlens

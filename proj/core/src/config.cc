#include "acctlens/config.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "acctlens/errors.h"

namespace acctlens {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void Fail(int line_no, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line_no) + ": " + message);
}

std::vector<double> ParseEdges(std::string_view value, int line_no) {
  std::vector<double> edges;
  while (!value.empty()) {
    const std::size_t comma = value.find(',');
    const std::string_view item = Trim(value.substr(0, comma));
    double edge = 0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), edge);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      Fail(line_no, "bad edge '" + std::string(item) + "'");
    }
    edges.push_back(edge);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return edges;
}

HistogramSpec* SpecFor(ReportOptions& reports, std::string_view name) {
  if (name == "users_total") return &reports.users_total;
  if (name == "users_distinct") return &reports.users_distinct;
  if (name == "stime") return &reports.stime;
  if (name == "utime") return &reports.utime;
  if (name == "etime") return &reports.etime;
  if (name == "memory") return &reports.memory;
  return nullptr;
}

}  // namespace

AnalysisConfig ParseConfig(std::string_view text,
                           const std::filesystem::path& base_dir) {
  AnalysisConfig config;
  bool adaptive_memory = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) Fail(line_no, "expected key = value");
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));

    if (key == "ahz") {
      unsigned ahz = 0;
      const auto [ptr, ec] =
          std::from_chars(value.data(), value.data() + value.size(), ahz);
      if (ec != std::errc() || ptr != value.data() + value.size() || ahz == 0) {
        Fail(line_no, "ahz must be a positive integer");
      }
      config.ahz = ahz;
    } else if (key == "memory_mode") {
      if (value != "fixed" && value != "adaptive") {
        Fail(line_no, "memory_mode must be fixed or adaptive");
      }
      adaptive_memory = value == "adaptive";
    } else if (key == "distinct_mode") {
      if (value == "exact") {
        config.reports.distinct_mode = DistinctMode::kExact;
      } else if (value == "sketch") {
        config.reports.distinct_mode = DistinctMode::kSketch;
      } else {
        Fail(line_no, "distinct_mode must be exact or sketch");
      }
    } else if (key == "passwd") {
      std::filesystem::path path{std::string(value)};
      if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
      config.passwd_path = path;
    } else if (key.starts_with("edges.")) {
      HistogramSpec* spec = SpecFor(config.reports, key.substr(6));
      if (!spec) Fail(line_no, "no histogram named '" + std::string(key.substr(6)) + "'");
      spec->edges = ParseEdges(value, line_no);
      spec->adaptive = false;
      try {
        spec->Validate();
      } catch (const InvalidSpec& e) {
        Fail(line_no, e.what());
      }
    } else {
      Fail(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  if (adaptive_memory) config.reports.memory = AdaptiveMemorySpec();
  return config;
}

AnalysisConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str(), path.parent_path());
}

}  // namespace acctlens

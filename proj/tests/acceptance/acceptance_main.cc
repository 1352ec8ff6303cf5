// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <malloc.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "acctlens/byte_source.h"
#include "acctlens/comp_t.h"
#include "acctlens/compare.h"
#include "acctlens/detect.h"
#include "acctlens/errors.h"
#include "acctlens/pipeline.h"
#include "acctlens/render.h"
#include "acctlens/reports.h"
#include "acctlens/synthgen.h"
#include "cli.h"
#include "support/counting_source.h"
#include "support/random_logs.h"
#include "support/reference_reports.h"

namespace acctlens {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

// Generated logs shared between criteria.
struct Workspace {
  testing::TempDir dir;
  fs::path hpc_big;       // 1,853,411 records
  fs::path internet_big;  // 87,137 records
  GenerationSummary hpc_summary;
  GenerationSummary internet_summary;
};

GenerationSummary GenerateTo(const GeneratorConfig& cfg, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  GenerationSummary s = GenerateLog(cfg, out);
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
  return s;
}

GeneratorConfig Builtin(std::string_view profile, std::uint64_t n,
                        std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.profile = BuiltinProfile(profile);
  cfg.n_records = n;
  cfg.seed = seed;
  return cfg;
}

Verdict CodecExhaustive() {
  Verdict v;
  const auto start = Clock::now();
  std::uint32_t mismatches = 0;
  for (std::uint32_t raw = 0; raw <= 0xFFFF; ++raw) {
    const std::uint64_t mantissa = raw & 0x1FFF;
    const std::uint64_t exponent = raw >> 13;
    const std::uint64_t expected = mantissa * (std::uint64_t{1} << (3 * exponent));
    if (DecodeCompT(CompT{static_cast<std::uint16_t>(raw)}) != expected) {
      ++mismatches;
    }
  }
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<Ticks> ticks(1, kMaxCompTTicks);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const Ticks t = ticks(rng);
    const double back = static_cast<double>(DecodeCompT(EncodeCompT(t)));
    worst = std::max(worst, std::abs(back - t) / static_cast<double>(t));
  }
  const double secs = Seconds(start);
  v.Require(mismatches == 0, fmt::format("{} decode mismatches", mismatches));
  v.Require(worst < 0.001, fmt::format("round-trip error {:.5f}", worst));
  v.Require(secs < 1.0, fmt::format("took {:.2f} s", secs));
  v.detail = v.pass ? fmt::format("65536 codes exact, max round-trip error "
                                  "{:.5f}%, {:.3f} s",
                                  100 * worst, secs)
                    : v.detail;
  return v;
}

Verdict OracleEquivalence() {
  Verdict v;
  const auto start = Clock::now();
  int mismatched = 0;
  for (int i = 0; i < 50; ++i) {
    std::mt19937_64 rng(9000 + i);
    GeneratorConfig cfg =
        testing::RandomConfig(9000 + i, 1 + rng() % 10000);
    cfg.format = i % 2 ? FormatKind::kSysV32 : FormatKind::kLinux64;
    cfg.order = (i / 2) % 2 ? Endianness::kBig : Endianness::kLittle;
    const auto log = testing::Generate(cfg);

    MemoryByteSource source(log.bytes);
    const RunResult run = Analyze(source, AnalysisOptions{});
    const auto reference = testing::ReferenceReports(testing::LoadAllRecords(
        log.bytes, cfg.format, cfg.order, cfg.ahz));
    bool same = run.outputs.size() == reference.size();
    for (std::size_t r = 0; same && r < reference.size(); ++r) {
      same = Render(run.outputs[r], RenderFormat::kJson) ==
             Render(reference[r], RenderFormat::kJson);
    }
    if (!same) ++mismatched;
  }
  const double secs = Seconds(start);
  v.Require(mismatched == 0, fmt::format("{} of 50 logs differ", mismatched));
  v.Require(secs < 30, fmt::format("took {:.1f} s", secs));
  if (v.pass) v.detail = fmt::format("50 logs x 9 reports identical, {:.1f} s", secs);
  return v;
}

Verdict SinglePass(const Workspace& ws) {
  Verdict v;
  const auto log = testing::Generate(Builtin("hpc", 20000, 3));
  const DetectionHints both{FormatKind::kLinux64, Endianness::kLittle};
  for (std::size_t k = 1; k <= kStandardReportNames.size(); ++k) {
    AnalysisOptions opts;
    for (std::size_t i = 0; i < k; ++i) {
      opts.report_names.emplace_back(kStandardReportNames[i]);
    }
    // Layout given: the log is read exactly once.
    opts.hints = both;
    MemoryByteSource inner(log.bytes);
    testing::CountingByteSource counted(inner);
    Analyze(counted, opts);
    v.Require(counted.traversals_started() == 1 &&
                  counted.complete_traversals() == 1 &&
                  counted.rewinds() == 0 &&
                  counted.bytes_read() == log.bytes.size(),
              fmt::format("{} reports with hints: {} traversals, {} rewinds, "
                          "{} bytes",
                          k, counted.traversals_started(), counted.rewinds(),
                          counted.bytes_read()));

    // Layout detected: a bounded head probe, then one full pass.
    opts.hints = {};
    MemoryByteSource inner2(log.bytes);
    testing::CountingByteSource probed(inner2);
    Analyze(probed, opts);
    v.Require(probed.complete_traversals() == 1 &&
                  probed.bytes_read() <= log.bytes.size() + kProbeBytes,
              fmt::format("{} reports detected: {} full traversals, {} bytes",
                          k, probed.complete_traversals(), probed.bytes_read()));
  }
  // Same check on the large file through the file-backed source.
  FileByteSource file(ws.hpc_big);
  testing::CountingByteSource counted(file);
  Analyze(counted, AnalysisOptions{});
  v.Require(counted.complete_traversals() == 1,
            "large file read more than once");
  if (v.pass) {
    v.detail = "1 traversal for 1..9 reports (hinted and detected), "
               "large file 1 traversal";
  }
  return v;
}

std::uint64_t StatusKb(const char* key) {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key, 0) == 0) {
      return std::stoull(line.substr(std::string(key).size()));
    }
  }
  return 0;
}

Verdict Throughput(const Workspace& ws) {
  Verdict v;
  // Hand freed heap back to the kernel, then reset the high-water mark so
  // it measures the analysis alone.
  malloc_trim(0);
  std::ofstream clear("/proc/self/clear_refs");
  clear << "5";
  clear.close();
  v.Require(static_cast<bool>(clear), "cannot reset VmHWM");
  const std::uint64_t base_kb = StatusKb("VmRSS:");
  const auto start = Clock::now();
  const RunResult run = AnalyzeFile(ws.hpc_big, AnalysisOptions{});
  const double secs = Seconds(start);
  const std::uint64_t peak_kb = StatusKb("VmHWM:");
  const double extra_mb = (static_cast<double>(peak_kb) - base_kb) / 1024.0;
  v.Require(run.metadata.records_read == 1853411,
            fmt::format("read {} records", run.metadata.records_read));
  v.Require(run.outputs.size() == 9, "not nine reports");
  v.Require(secs < 10, fmt::format("took {:.2f} s", secs));
  v.Require(base_kb > 0 && peak_kb > 0, "no /proc/self/status");
  v.Require(extra_mb < 200, fmt::format("peak extra {:.1f} MB", extra_mb));
  if (v.pass) {
    v.detail = fmt::format("1853411 records, 9 reports in {:.2f} s, peak "
                           "extra memory {:.1f} MB (RSS {:.1f} -> {:.1f} MB)",
                           secs, extra_mb, base_kb / 1024.0, peak_kb / 1024.0);
  }
  return v;
}

Verdict DistributionFidelity(const Workspace& ws) {
  Verdict v;
  const testing::TempDir dir;
  const fs::path path = dir / "hpc200k.pacct";
  GenerateTo(Builtin("hpc", 200000, 77), path);
  const RunResult run = AnalyzeFile(path, AnalysisOptions{});
  const double utime_target[] = {21, 21, 22, 16, 7, 13};
  std::string got;
  for (const auto& out : run.outputs) {
    const auto* h = std::get_if<Histogram>(&out.payload);
    if (!h) continue;
    if (out.name == "utime") {
      for (std::size_t i = 0; i < h->percents.size(); ++i) {
        got += fmt::format("{}{:.1f}", i ? "/" : "", h->percents[i]);
        v.Require(std::abs(h->percents[i] - utime_target[i]) <= 1.0,
                  fmt::format("utime bucket {} at {:.2f}%", i, h->percents[i]));
      }
    }
    if (out.name == "memory") {
      const double pct = h->percents.at(4);  // [2000, 7000)
      got += fmt::format(", memory 2000-7000 {:.1f}%", pct);
      v.Require(pct >= 93 && std::abs(pct - 94) <= 2,
                fmt::format("memory 2000-7000 at {:.2f}%", pct));
    }
  }
  // The 1.85M-record log keeps the same shape.
  const auto& big = ws.hpc_summary.bucket_counts.at("utime");
  std::uint64_t total = 0;
  for (auto c : big) total += c;
  for (std::size_t i = 0; i < big.size(); ++i) {
    const double pct = 100.0 * big[i] / total;
    v.Require(std::abs(pct - utime_target[i]) <= 1.0,
              fmt::format("large log utime bucket {} at {:.2f}%", i, pct));
  }
  if (v.pass) v.detail = "utime " + got;
  return v;
}

Verdict ComparisonRatio(const Workspace& ws) {
  Verdict v;
  const RunResult a = AnalyzeFile(ws.internet_big, AnalysisOptions{});
  const RunResult b = AnalyzeFile(ws.hpc_big, AnalysisOptions{});
  const ComparisonResult r = CompareReports(a.outputs, b.outputs);
  v.Require(r.total_command_ratio.has_value(), "no ratio");
  if (r.total_command_ratio) {
    v.Require(std::abs(*r.total_command_ratio - 21.27) <= 0.01,
              fmt::format("ratio {:.4f}", *r.total_command_ratio));
  }
  // Same through the CLI.
  std::ostringstream out, err;
  const int code = cli::RunCli({"acctlens", "compare", ws.internet_big.string(),
                                ws.hpc_big.string(), "--format", "text"},
                               out, err);
  v.Require(code == 0 && out.str().find("21.27") != std::string::npos,
            "CLI compare did not report 21.27");
  if (v.pass) {
    v.detail = fmt::format("B/A total commands {:.4f}, distinct-ratio "
                           "ratio {:.4f}{}",
                           *r.total_command_ratio, *r.distinct_ratio_ratio,
                           r.distinct_ratio_order_of_magnitude
                               ? " (order-of-magnitude flagged)"
                               : "");
  }
  return v;
}

int CliExit(const fs::path& path) {
  std::ostringstream out, err;
  return cli::RunCli({"acctlens", "summarize", path.string()}, out, err);
}

template <typename E>
bool Throws(const fs::path& path) {
  try {
    FileByteSource source(path);
    DetectFormat(source);
  } catch (const E&) {
    return true;
  } catch (...) {
  }
  return false;
}

Verdict Detection() {
  Verdict v;
  const testing::TempDir dir;
  int correct = 0;
  for (int i = 0; i < 400; ++i) {
    // Sizes sweep 1..1000 and include both ends.
    const std::uint64_t n = i == 0 ? 1 : i == 1 ? 1000 : 1 + (i * 7919) % 1000;
    GeneratorConfig cfg = testing::RandomConfig(50000 + i, n);
    cfg.format = i % 2 ? FormatKind::kSysV32 : FormatKind::kLinux64;
    cfg.order = (i / 2) % 2 ? Endianness::kBig : Endianness::kLittle;
    const fs::path path = dir / fmt::format("log{}.pacct", i);
    GenerateTo(cfg, path);
    FileByteSource source(path);
    const DetectedFormat d = DetectFormat(source);
    if (d.kind == cfg.format && d.order == cfg.order) ++correct;
  }
  v.Require(correct == 400, fmt::format("{} of 400 detected", correct));

  const fs::path odd = dir / "size33.pacct";
  std::ofstream(odd, std::ios::binary) << std::string(33, 'a');
  v.Require(Throws<TruncatedFile>(odd) && CliExit(odd) == cli::kExitFormat,
            "size-33 file not rejected as truncated");

  const fs::path empty = dir / "empty.pacct";
  std::ofstream(empty, std::ios::binary).flush();
  v.Require(Throws<UnknownFormat>(empty) && CliExit(empty) == cli::kExitFormat,
            "empty file not rejected as unknown format");

  std::mt19937_64 rng(31);
  int random_rejected = 0;
  for (int i = 0; i < 20; ++i) {
    std::vector<std::uint8_t> bytes(32 * (1 + rng() % 200));
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
    // Zeroing the outer btime bytes keeps it below 1985 in either order.
    for (std::size_t at = 0; at < bytes.size(); at += 32) {
      bytes[at + 8] = 0;
      bytes[at + 11] = 0;
    }
    const fs::path junk = dir / fmt::format("junk{}.pacct", i);
    testing::WriteFile(junk, bytes);
    if (Throws<UnknownFormat>(junk) && CliExit(junk) == cli::kExitFormat) {
      ++random_rejected;
    }
  }
  v.Require(random_rejected == 20,
            fmt::format("{} of 20 random files rejected", random_rejected));
  if (v.pass) {
    v.detail = "400/400 detected; size 33, empty and 20 random files "
               "rejected with exit code 2";
  }
  return v;
}

Verdict TopMetricSemantics(const Workspace& ws) {
  Verdict v;
  std::uint64_t checked = 0;
  auto check = [&](const GenerationSummary& s, const RunResult& run) {
    for (const auto& [comm, users] : s.command_distinct_users) {
      ++checked;
      v.Require(users <= s.command_counts.at(comm) && users <= s.users.size(),
                fmt::format("'{}' has {} users", comm, users));
    }
    const auto& instances = std::get<RankedList>(run.outputs[3].payload);
    const auto& distinct = std::get<RankedList>(run.outputs[4].payload);
    v.Require(distinct.universe <= s.users.size(), "universe exceeds uids");
    for (const RankedEntry& e : distinct.entries) {
      v.Require(e.count <= s.command_counts.at(e.label) &&
                    e.count <= distinct.universe,
                fmt::format("'{}' distinct users {}", e.label, e.count));
    }
    for (const RankedEntry& e : instances.entries) {
      const auto it = s.command_distinct_users.find(e.label);
      v.Require(it != s.command_distinct_users.end() && it->second <= e.count,
                fmt::format("'{}' instances {}", e.label, e.count));
    }
  };
  for (int i = 0; i < 50; ++i) {
    const auto log = testing::Generate(testing::RandomConfig(70000 + i, 5000));
    MemoryByteSource source(log.bytes);
    check(log.summary, Analyze(source, AnalysisOptions{}));
  }
  check(ws.hpc_summary, AnalyzeFile(ws.hpc_big, AnalysisOptions{}));
  check(ws.internet_summary, AnalyzeFile(ws.internet_big, AnalysisOptions{}));
  if (v.pass) {
    v.detail = fmt::format("{} commands over 52 logs satisfy both bounds",
                           checked);
  }
  return v;
}

int Main() {
  Workspace ws;
  ws.hpc_big = ws.dir / "hpc.pacct";
  ws.internet_big = ws.dir / "internet.pacct";
  ws.hpc_summary = GenerateTo(Builtin("hpc", 1853411, 1), ws.hpc_big);
  ws.internet_summary =
      GenerateTo(Builtin("internet", 87137, 1), ws.internet_big);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"codec exhaustiveness", CodecExhaustive},
      {"oracle equivalence", OracleEquivalence},
      {"single-pass architecture", [&] { return SinglePass(ws); }},
      {"full-scale throughput", [&] { return Throughput(ws); }},
      {"distribution fidelity", [&] { return DistributionFidelity(ws); }},
      {"comparison ratios", [&] { return ComparisonRatio(ws); }},
      {"format detection", Detection},
      {"top-20 metric semantics", [&] { return TopMetricSemantics(ws); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace acctlens

int main() { return acctlens::Main(); }

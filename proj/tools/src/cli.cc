#include "cli.h"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "acctlens/compare.h"
#include "acctlens/config.h"
#include "acctlens/errors.h"
#include "acctlens/passwd.h"
#include "acctlens/pipeline.h"
#include "acctlens/record_stream.h"
#include "acctlens/render.h"
#include "acctlens/reports.h"
#include "acctlens/synthgen.h"

namespace acctlens::cli {
namespace {

namespace fs = std::filesystem;

// Error raised for bad flag values found after parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct GlobalFlags {
  std::optional<unsigned> ahz;
  std::string endian;
  std::string format_kind;
  std::string passwd;
  std::string config;
  bool quiet = false;
};

struct Context {
  GlobalFlags global;
  std::ostream& out;
  std::ostream& err;
};

RenderFormat ParseFormatFlag(const std::string& text,
                             std::initializer_list<RenderFormat> allowed) {
  const std::optional<RenderFormat> f = ParseRenderFormat(text);
  if (!f || std::find(allowed.begin(), allowed.end(), *f) == allowed.end()) {
    std::string names;
    for (RenderFormat a : allowed) {
      names += (names.empty() ? "" : ", ") + std::string(ToString(a));
    }
    throw UsageError("--format must be one of: " + names);
  }
  return *f;
}

DetectionHints HintsFrom(const GlobalFlags& g) {
  DetectionHints hints;
  if (!g.format_kind.empty()) {
    hints.kind = ParseFormatKind(g.format_kind);
    if (!hints.kind) throw UsageError("--format-kind must be linux or sysv");
  }
  if (!g.endian.empty()) {
    hints.order = ParseEndianness(g.endian);
    if (!hints.order) throw UsageError("--endian must be little or big");
  }
  return hints;
}

// Config file first, then command-line flags on top.
AnalysisOptions OptionsFrom(const GlobalFlags& g) {
  AnalysisOptions opts;
  std::optional<fs::path> passwd;
  if (!g.config.empty()) {
    AnalysisConfig cfg = LoadConfig(g.config);
    opts.ahz = cfg.ahz;
    opts.reports = std::move(cfg.reports);
    passwd = cfg.passwd_path;
  }
  if (g.ahz) {
    if (*g.ahz == 0) throw UsageError("--ahz must be positive");
    opts.ahz = *g.ahz;
  }
  if (!g.passwd.empty()) passwd = g.passwd;
  if (passwd) opts.names = std::make_shared<const UserNames>(LoadPasswd(*passwd));
  opts.hints = HintsFrom(g);
  return opts;
}

void EmitWarnings(const Context& ctx, const RunMetadata& meta) {
  if (ctx.global.quiet) return;
  for (const std::string& w : meta.warnings) ctx.err << "warning: " << w << "\n";
}

// Writes text to path, or to ctx.out when path is empty.
void Emit(const Context& ctx, const std::string& path, const std::string& text) {
  if (path.empty()) {
    ctx.out << text;
    ctx.out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

RunResult RunReports(const Context& ctx, const std::string& file,
                     std::vector<std::string> names) {
  AnalysisOptions opts = OptionsFrom(ctx.global);
  opts.report_names = std::move(names);
  for (const std::string& name : opts.report_names) {
    if (!IsStandardReport(name) && name != kFeaturesReportName) {
      throw UsageError("unknown report '" + name + "'");
    }
  }
  RunResult run = AnalyzeFile(file, opts);
  EmitWarnings(ctx, run.metadata);
  return run;
}

// ------------------------------------------------------------------ dump

constexpr std::string_view kDumpColumns =
    "uid,user,gid,tty,comm,btime,utime_s,stime_s,etime_s,mem_pages,"
    "io_blocks,rw_blocks,flags";

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string UserName(const AnalysisOptions& opts, std::uint32_t uid) {
  if (!opts.names) return {};
  const auto it = opts.names->find(uid);
  return it == opts.names->end() ? std::string() : it->second;
}

void Dump(const Context& ctx, const std::string& file, RenderFormat format,
          const std::string& out_path) {
  const AnalysisOptions opts = OptionsFrom(ctx.global);
  FileByteSource source(file);
  const DetectedFormat detected = ResolveFormat(source, opts.hints);
  RecordStream stream(source, detected.kind, detected.order, opts.ahz);

  std::ofstream file_out;
  if (!out_path.empty()) {
    file_out.open(out_path, std::ios::binary | std::ios::trunc);
    if (!file_out) throw IoError("cannot open '" + out_path + "' for writing");
  }
  std::ostream& out = out_path.empty() ? ctx.out : file_out;

  if (format == RenderFormat::kCsv) {
    out << kDumpColumns << "\n";
    while (std::optional<ProcessRecord> r = stream.Next()) {
      out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r->uid,
                         CsvField(UserName(opts, r->uid)), r->gid, r->tty,
                         CsvField(r->comm), r->btime, r->utime_s, r->stime_s,
                         r->etime_s, r->mem_pages, r->io_blocks, r->rw_blocks,
                         FlagLetters(r->flags));
    }
  } else {
    out << "{\"schema_version\": " << kSchemaVersion << ", \"format_kind\": \""
        << ToString(detected.kind) << "\", \"endianness\": \""
        << ToString(detected.order) << "\", \"records\": [";
    bool first = true;
    while (std::optional<ProcessRecord> r = stream.Next()) {
      nlohmann::ordered_json j;
      j["uid"] = r->uid;
      j["user"] = UserName(opts, r->uid);
      j["gid"] = r->gid;
      j["tty"] = r->tty;
      j["comm"] = r->comm;
      j["btime"] = r->btime;
      j["utime_s"] = r->utime_s;
      j["stime_s"] = r->stime_s;
      j["etime_s"] = r->etime_s;
      j["mem_pages"] = r->mem_pages;
      j["io_blocks"] = r->io_blocks;
      j["rw_blocks"] = r->rw_blocks;
      j["flags"] = FlagLetters(r->flags);
      out << (first ? "\n" : ",\n") << j.dump();
      first = false;
    }
    out << "\n]}\n";
  }
  out.flush();
  if (!out) throw IoError("failed writing dump output");
  if (!ctx.global.quiet) {
    for (const std::string& w : stream.Warnings()) {
      ctx.err << "warning: " << w << "\n";
    }
  }
}

// ------------------------------------------------------------------- gen

struct GenFlags {
  std::string profile = "hpc";
  std::uint64_t records = 1000;
  std::uint64_t seed = 1;
  std::size_t users = 0;
  std::uint32_t time_origin = kDefaultTimeOrigin;
  std::string out;
};

void Generate(const Context& ctx, const GenFlags& flags) {
  GeneratorConfig cfg;
  try {
    cfg.profile = BuiltinProfile(flags.profile);
  } catch (const std::out_of_range&) {
    throw UsageError("unknown profile '" + flags.profile +
                     "' (internet, hpc, masquerader)");
  }
  const DetectionHints hints = HintsFrom(ctx.global);
  cfg.format = hints.kind.value_or(FormatKind::kLinux64);
  cfg.order = hints.order.value_or(Endianness::kLittle);
  cfg.n_records = flags.records;
  cfg.n_users = flags.users;
  cfg.seed = flags.seed;
  cfg.time_origin = flags.time_origin;
  if (ctx.global.ahz) {
    if (*ctx.global.ahz == 0) throw UsageError("--ahz must be positive");
    cfg.ahz = *ctx.global.ahz;
  }

  std::ofstream log(flags.out, std::ios::binary | std::ios::trunc);
  if (!log) throw IoError("cannot open '" + flags.out + "' for writing");
  const GenerationSummary summary = GenerateLog(cfg, log);
  log.close();
  if (!log) throw IoError("failed writing '" + flags.out + "'");
  const std::string truth_path = flags.out + ".truth.json";
  Emit(ctx, truth_path, SummaryToJson(summary));
  if (!ctx.global.quiet) {
    ctx.err << fmt::format("wrote {} records to {} (truth: {})\n",
                           summary.records_written, flags.out, truth_path);
  }
}

int Fail(const Context& ctx, int code, const std::string& message) {
  ctx.err << "acctlens: " << message << "\n";
  return code;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Context ctx{GlobalFlags{}, out, err};
  GlobalFlags& g = ctx.global;

  CLI::App app{"Process accounting log analyzer", "acctlens"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--ahz", g.ahz, "Clock ticks per second (default 100)");
  app.add_option("--endian", g.endian, "Byte order: little or big");
  app.add_option("--format-kind", g.format_kind,
                 "Record layout: linux (64-byte) or sysv (32-byte)");
  app.add_option("--passwd", g.passwd, "passwd file for uid-to-name mapping");
  app.add_option("--config", g.config, "Analysis config file");
  app.add_flag("-q,--quiet", g.quiet, "Suppress warnings");

  std::string file;
  std::string file_b;
  std::string format = "text";
  std::string out_path;
  std::string report_name;

  CLI::App* summarize = app.add_subcommand("summarize", "General report as text");
  summarize->add_option("file", file, "Accounting log")->required();
  summarize->add_option("--format", format, "text or json");

  CLI::App* report = app.add_subcommand("report", "One report");
  report->add_option("file", file, "Accounting log")->required();
  report->add_option("--name", report_name, "Report name")->required();
  report->add_option("--format", format, "text, json, csv, svg or html");
  report->add_option("--out", out_path, "Output file (default stdout)");

  CLI::App* all = app.add_subcommand("all", "All nine reports");
  all->add_option("file", file, "Accounting log")->required();
  all->add_option("--format", format, "html (default), json or text");
  all->add_option("--out", out_path, "Output file (default stdout)");

  CLI::App* compare = app.add_subcommand("compare", "Compare two logs");
  compare->add_option("file_a", file, "First log (A)")->required();
  compare->add_option("file_b", file_b, "Second log (B)")->required();
  compare->add_option("--format", format, "text or json");
  compare->add_option("--out", out_path, "Output file (default stdout)");

  CLI::App* features = app.add_subcommand("features", "Per-user feature table");
  features->add_option("file", file, "Accounting log")->required();
  features->add_option("--out", out_path, "CSV output file (default stdout)");

  GenFlags gen_flags;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic log");
  gen->add_option("--profile", gen_flags.profile,
                  "internet, hpc or masquerader")
      ->capture_default_str();
  gen->add_option("--records", gen_flags.records, "Record count")
      ->capture_default_str();
  gen->add_option("--seed", gen_flags.seed, "RNG seed")->capture_default_str();
  gen->add_option("--users", gen_flags.users,
                  "User count (default: profile's)");
  gen->add_option("--time-origin", gen_flags.time_origin,
                  "Epoch second of the first record")
      ->capture_default_str();
  gen->add_option("--out", gen_flags.out, "Output log path")->required();

  CLI::App* dump = app.add_subcommand("dump", "Normalized records");
  dump->add_option("file", file, "Accounting log")->required();
  dump->add_option("--format", format, "csv (default) or json");
  dump->add_option("--out", out_path, "Output file (default stdout)");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (summarize->parsed()) {
      const RenderFormat f =
          ParseFormatFlag(format, {RenderFormat::kText, RenderFormat::kJson});
      const RunResult run = RunReports(ctx, file, {"general"});
      Emit(ctx, "", Render(run.outputs.front(), f));
    } else if (report->parsed()) {
      const RenderFormat f = ParseFormatFlag(
          format, {RenderFormat::kText, RenderFormat::kJson, RenderFormat::kCsv,
                   RenderFormat::kSvg, RenderFormat::kHtml});
      if (!IsStandardReport(report_name) && report_name != kFeaturesReportName) {
        throw UsageError("unknown report '" + report_name + "'");
      }
      const RunResult run = RunReports(ctx, file, {report_name});
      Emit(ctx, out_path, Render(run.outputs.front(), f));
    } else if (all->parsed()) {
      if (format == "text" && all->count("--format") == 0) format = "html";
      const RenderFormat f = ParseFormatFlag(
          format, {RenderFormat::kHtml, RenderFormat::kJson, RenderFormat::kText});
      const RunResult run = RunReports(ctx, file, {});
      Emit(ctx, out_path, RenderRun(run, f, "Process accounting: " + file));
    } else if (compare->parsed()) {
      const RenderFormat f =
          ParseFormatFlag(format, {RenderFormat::kText, RenderFormat::kJson});
      const RunResult a = RunReports(ctx, file, {});
      const RunResult b = RunReports(ctx, file_b, {});
      Emit(ctx, out_path,
           RenderComparison(CompareReports(a.outputs, b.outputs), f, file,
                            file_b));
    } else if (features->parsed()) {
      const RunResult run =
          RunReports(ctx, file, {std::string(kFeaturesReportName)});
      Emit(ctx, out_path, Render(run.outputs.front(), RenderFormat::kCsv));
    } else if (gen->parsed()) {
      Generate(ctx, gen_flags);
    } else if (dump->parsed()) {
      if (dump->count("--format") == 0) format = "csv";
      const RenderFormat f =
          ParseFormatFlag(format, {RenderFormat::kCsv, RenderFormat::kJson});
      Dump(ctx, file, f, out_path);
    }
  } catch (const UnknownFormat& e) {
    return Fail(ctx, kExitFormat, fmt::format("unknown format: {}", e.what()));
  } catch (const TruncatedFile& e) {
    return Fail(ctx, kExitFormat, fmt::format("truncated file: {}", e.what()));
  } catch (const IoError& e) {
    return Fail(ctx, kExitIo, e.what());
  } catch (const std::exception& e) {
    return Fail(ctx, kExitUsage, e.what());
  }
  return kExitOk;
}

}  // namespace acctlens::cli

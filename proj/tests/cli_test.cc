#include "cli.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "acctlens/synthgen.h"
#include "support/random_logs.h"

namespace acctlens::cli {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "acctlens");
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t CountLines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    log_ = (dir_ / "hpc.pacct").string();
    const CliResult r = Invoke({"gen", "--profile", "hpc", "--records", "3000",
                             "--seed", "5", "--out", log_, "-q"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  }

  testing::TempDir dir_;
  std::string log_;
};

TEST_F(CliTest, GenWritesTruthFile) {
  const auto truth = nlohmann::json::parse(Slurp(log_ + ".truth.json"));
  EXPECT_EQ(truth["records_written"], 3000);
  EXPECT_EQ(truth["seed"], 5);
  EXPECT_EQ(std::filesystem::file_size(log_), 3000u * 64);
}

TEST_F(CliTest, SummarizeTextAndJson) {
  const CliResult text = Invoke({"summarize", log_});
  EXPECT_EQ(text.code, kExitOk);
  EXPECT_NE(text.out.find("3000"), std::string::npos);
  const CliResult json = Invoke({"summarize", log_, "--format", "json"});
  ASSERT_EQ(json.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(json.out)["total_commands"], 3000);
}

TEST_F(CliTest, ReportMatchesTruth) {
  const auto truth = nlohmann::json::parse(Slurp(log_ + ".truth.json"));
  const CliResult r = Invoke({"report", log_, "--name", "utime", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["counts"], truth["bucket_counts"]["utime"]["counts"]);
  EXPECT_EQ(Invoke({"report", log_, "--name", "nope"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"report", log_, "--name", "general", "--format", "svg"}).code,
            kExitUsage);
}

TEST_F(CliTest, ReportToFile) {
  const std::string out = (dir_ / "mem.svg").string();
  ASSERT_EQ(Invoke({"report", log_, "--name", "memory", "--format", "svg", "--out",
                 out}).code,
            kExitOk);
  EXPECT_EQ(Slurp(out).rfind("<svg", 0), 0u);
}

TEST_F(CliTest, AllFormats) {
  const CliResult html = Invoke({"all", log_});
  ASSERT_EQ(html.code, kExitOk);
  EXPECT_NE(html.out.find("<html"), std::string::npos);
  const CliResult json = Invoke({"all", log_, "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(json.out)["reports"].size(), 9u);
  EXPECT_EQ(Invoke({"all", log_, "--format", "csv"}).code, kExitUsage);
}

TEST_F(CliTest, FeaturesCsv) {
  const CliResult r = Invoke({"features", log_});
  ASSERT_EQ(r.code, kExitOk);
  const auto truth = nlohmann::json::parse(Slurp(log_ + ".truth.json"));
  EXPECT_EQ(CountLines(r.out), truth["users"].size() + 1);
  EXPECT_EQ(r.out.rfind("uid,user,total_commands", 0), 0u);
}

TEST_F(CliTest, DumpRowsEqualRecords) {
  const CliResult csv = Invoke({"dump", log_});
  ASSERT_EQ(csv.code, kExitOk);
  EXPECT_EQ(CountLines(csv.out), 3001u);
  const CliResult json = Invoke({"dump", log_, "--format", "json"});
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j["records"].size(), 3000u);
  EXPECT_EQ(j["format_kind"], "linux64");
}

TEST_F(CliTest, CompareWithItself) {
  const CliResult r = Invoke({"compare", log_, log_, "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(r.out)["total_command_ratio"], 1.0);
}

TEST_F(CliTest, ConfigAndPasswd) {
  const std::string plain = Invoke({"features", log_}).out;
  const std::size_t row = plain.find('\n') + 1;
  const std::string uid = plain.substr(row, plain.find(',', row) - row);
  std::ofstream(dir_ / "pw") << "alice:x:" << uid << ":100::/:/bin/sh\n";
  std::ofstream(dir_ / "acct.conf") << "passwd = pw\nedges.utime = 0, 100\n";
  const CliResult r = Invoke({"--config", (dir_ / "acct.conf").string(), "report",
                           log_, "--name", "utime", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(CountLines(r.out), 3u);
  const CliResult f =
      Invoke({"--passwd", (dir_ / "pw").string(), "features", log_});
  EXPECT_NE(f.out.find("\n" + uid + ",alice,"), std::string::npos);
  std::ofstream(dir_ / "bad.conf") << "what = ever\n";
  EXPECT_EQ(Invoke({"--config", (dir_ / "bad.conf").string(), "summarize", log_})
                .code,
            kExitUsage);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"summarize", (dir_ / "missing").string()}).code, kExitIo);

  std::ofstream(dir_ / "odd.pacct", std::ios::binary) << std::string(33, 'x');
  const CliResult odd = Invoke({"summarize", (dir_ / "odd.pacct").string()});
  EXPECT_EQ(odd.code, kExitFormat);
  EXPECT_NE(odd.err.find("truncated"), std::string::npos);

  std::ofstream(dir_ / "junk.pacct", std::ios::binary) << std::string(64, '\xff');
  EXPECT_EQ(Invoke({"summarize", (dir_ / "junk.pacct").string()}).code, kExitFormat);

  EXPECT_EQ(Invoke({"--endian", "middle", "summarize", log_}).code, kExitUsage);
  EXPECT_EQ(Invoke({"--ahz", "0", "summarize", log_}).code, kExitUsage);
}

TEST_F(CliTest, EmptyFileNeedsBothHints) {
  const std::string empty = (dir_ / "empty.pacct").string();
  std::ofstream(empty, std::ios::binary).flush();
  EXPECT_EQ(Invoke({"summarize", empty}).code, kExitFormat);
  const CliResult r = Invoke({"--format-kind", "linux", "--endian", "little",
                           "summarize", empty, "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["total_commands"], 0);
}

TEST_F(CliTest, WrongHintIsFormatError) {
  EXPECT_EQ(Invoke({"--format-kind", "sysv", "summarize", log_}).code, kExitFormat);
}

TEST_F(CliTest, GenRejectsBadProfile) {
  EXPECT_EQ(Invoke({"gen", "--profile", "desktop", "--out",
                 (dir_ / "x").string()}).code,
            kExitUsage);
}

}  // namespace
}  // namespace acctlens::cli

#ifndef ACCTLENS_CONFIG_H_
#define ACCTLENS_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "acctlens/comp_t.h"
#include "acctlens/reports.h"

namespace acctlens {

// Analysis settings read from a key = value file:
//
//   # comment
//   ahz = 100
//   memory_mode = fixed | adaptive
//   distinct_mode = exact | sketch
//   passwd = /etc/passwd
//   edges.users_total = 0, 20, 40, 70, 150, 500
//   edges.<report> = ...   (users_total users_distinct stime utime etime memory)
//
// Relative passwd paths resolve against the config file's directory.
struct AnalysisConfig {
  unsigned ahz = kDefaultAhz;
  ReportOptions reports;
  std::optional<std::filesystem::path> passwd_path;
};

// Throws ConfigError (with the line number) on unknown keys or bad values.
AnalysisConfig ParseConfig(std::string_view text,
                           const std::filesystem::path& base_dir = {});
AnalysisConfig LoadConfig(const std::filesystem::path& path);

}  // namespace acctlens

#endif  // ACCTLENS_CONFIG_H_

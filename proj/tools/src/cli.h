#ifndef ACCTLENS_TOOLS_CLI_H_
#define ACCTLENS_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace acctlens::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFormat = 2;
inline constexpr int kExitIo = 3;

// Runs the acctlens command line. args[0] is the program name. Results go
// to out (unless --out names a file), diagnostics to err.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace acctlens::cli

#endif  // ACCTLENS_TOOLS_CLI_H_

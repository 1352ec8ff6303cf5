#ifndef ACCTLENS_PASSWD_H_
#define ACCTLENS_PASSWD_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>

namespace acctlens {

using UserNames = std::map<std::uint32_t, std::string>;

// Reads passwd(5)-format lines ("name:pw:uid:gid:..."). Blank lines and '#'
// comments are skipped; malformed lines throw ConfigError. The first name
// seen for a uid wins.
UserNames ParsePasswd(std::istream& in);
UserNames LoadPasswd(const std::filesystem::path& path);

}  // namespace acctlens

#endif  // ACCTLENS_PASSWD_H_

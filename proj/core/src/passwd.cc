#include "acctlens/passwd.h"

#include <charconv>
#include <fstream>
#include <string>
#include <string_view>

#include "acctlens/errors.h"

namespace acctlens {

UserNames ParsePasswd(std::istream& in) {
  UserNames names;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::string_view rest(line);
    std::string_view fields[3];
    for (int i = 0; i < 3; ++i) {
      const std::size_t colon = rest.find(':');
      if (colon == std::string_view::npos && i < 2) {
        throw ConfigError("passwd line " + std::to_string(line_no) +
                          ": expected name:password:uid");
      }
      fields[i] = rest.substr(0, colon);
      rest = colon == std::string_view::npos ? std::string_view{}
                                             : rest.substr(colon + 1);
    }
    std::uint32_t uid = 0;
    const auto [ptr, ec] = std::from_chars(
        fields[2].data(), fields[2].data() + fields[2].size(), uid);
    if (ec != std::errc() || ptr != fields[2].data() + fields[2].size() ||
        fields[0].empty()) {
      throw ConfigError("passwd line " + std::to_string(line_no) +
                        ": bad uid '" + std::string(fields[2]) + "'");
    }
    names.emplace(uid, std::string(fields[0]));
  }
  return names;
}

UserNames LoadPasswd(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open passwd file " + path.string());
  return ParsePasswd(in);
}

}  // namespace acctlens

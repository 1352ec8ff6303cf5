#ifndef ACCTLENS_WARNINGS_H_
#define ACCTLENS_WARNINGS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace acctlens {

// Bounded list of diagnostic lines. Past the cap, messages are only
// counted; Lines() then ends with a summary of how many were dropped.
class WarningLog {
 public:
  static constexpr std::size_t kDefaultCap = 100;

  explicit WarningLog(std::size_t cap = kDefaultCap) : cap_(cap) {}

  void Add(std::string message);
  void Append(const std::vector<std::string>& messages);

  std::uint64_t total() const { return total_; }
  std::vector<std::string> Lines() const;

 private:
  std::size_t cap_;
  std::uint64_t total_ = 0;
  std::vector<std::string> lines_;
};

}  // namespace acctlens

#endif  // ACCTLENS_WARNINGS_H_

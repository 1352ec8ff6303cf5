#include "acctlens/warnings.h"

namespace acctlens {

void WarningLog::Add(std::string message) {
  ++total_;
  if (lines_.size() < cap_) lines_.push_back(std::move(message));
}

void WarningLog::Append(const std::vector<std::string>& messages) {
  for (const std::string& m : messages) Add(m);
}

std::vector<std::string> WarningLog::Lines() const {
  std::vector<std::string> out = lines_;
  if (total_ > lines_.size()) {
    out.push_back(std::to_string(total_ - lines_.size()) +
                  " further warnings suppressed");
  }
  return out;
}

}  // namespace acctlens

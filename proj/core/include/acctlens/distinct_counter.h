#ifndef ACCTLENS_DISTINCT_COUNTER_H_
#define ACCTLENS_DISTINCT_COUNTER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace acctlens {

enum class DistinctMode { kExact, kSketch };

// Counts distinct command names, either exactly (hash set) or with a
// HyperLogLog sketch of 2^12 registers (~1.6% standard error) for logs with
// adversarially many names.
class DistinctCounter {
 public:
  static constexpr unsigned kPrecision = 12;

  explicit DistinctCounter(DistinctMode mode = DistinctMode::kExact);

  void Add(std::string_view value);
  std::uint64_t Count() const;
  bool exact() const { return mode_ == DistinctMode::kExact; }

 private:
  DistinctMode mode_;
  std::unordered_set<std::string> exact_;
  std::vector<std::uint8_t> registers_;
};

}  // namespace acctlens

#endif  // ACCTLENS_DISTINCT_COUNTER_H_

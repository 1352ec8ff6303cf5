#ifndef ACCTLENS_SYNTHGEN_H_
#define ACCTLENS_SYNTHGEN_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "acctlens/comp_t.h"
#include "acctlens/format.h"

namespace acctlens {

struct WeightedCommand {
  std::string comm;
  double weight = 0;
};

// Users split into a light and a heavy class; the light class gets
// light_record_share of all records.
struct ActivitySpec {
  double light_user_fraction = 0.5;
  double light_record_share = 0.05;
};

// Memory drawn uniformly from [lo_pages, hi_pages) with probability weight.
struct MemoryComponent {
  double weight = 0;
  double lo_pages = 0;
  double hi_pages = 0;
};

// Synthetic workload description. Time weights are per bucket of the
// default stime/utime/etime report specs.
struct UserProfile {
  std::string name;
  std::vector<WeightedCommand> vocabulary;
  // The first core_commands entries are in every user's personal
  // vocabulary; the rest are kept per user with probability vocabulary_keep.
  std::size_t core_commands = 1;
  double vocabulary_keep = 0.5;
  ActivitySpec activity;
  std::vector<double> stime_weights;
  std::vector<double> utime_weights;
  std::vector<double> etime_weights;
  std::vector<MemoryComponent> memory;
  double superuser_fraction = 0;
  double mean_interarrival_s = 1;
  std::size_t default_users = 50;
};

// Throws std::invalid_argument when a weight family does not sum to 1
// (within 1e-6), a weight is negative, or a memory range is inverted.
void ValidateProfile(const UserProfile& profile);

// "internet", "hpc", "masquerader".
std::vector<UserProfile> BuiltinProfiles();
// Throws std::out_of_range.
UserProfile BuiltinProfile(std::string_view name);

inline constexpr std::uint32_t kDefaultTimeOrigin = 1136073600u;  // 2006-01-01
inline constexpr std::uint32_t kFirstUid = 1000;
inline constexpr std::string_view kGeneratorAlgorithm = "mt19937_64";

struct GeneratorConfig {
  UserProfile profile;
  std::size_t n_users = 0;  // 0: profile.default_users
  std::uint64_t n_records = 0;
  std::uint64_t seed = 0;
  FormatKind format = FormatKind::kLinux64;
  Endianness order = Endianness::kLittle;
  std::uint32_t time_origin = kDefaultTimeOrigin;
  unsigned ahz = kDefaultAhz;
};

struct UserTruth {
  std::uint64_t total_commands = 0;
  std::uint64_t distinct_commands = 0;
};

// Exact statistics of a generated log, keyed the way the reports see them
// (command names already truncated to the layout's width).
struct GenerationSummary {
  std::string algorithm{kGeneratorAlgorithm};
  std::uint64_t seed = 0;
  std::string profile;
  FormatKind format = FormatKind::kLinux64;
  Endianness order = Endianness::kLittle;
  unsigned ahz = kDefaultAhz;
  std::uint64_t records_written = 0;
  std::optional<double> first_event;
  std::optional<double> last_event;
  std::map<std::string, std::uint64_t> command_counts;
  std::map<std::string, std::uint64_t> command_distinct_users;
  std::map<std::uint32_t, UserTruth> users;
  // Per default-spec bucket counts for users_total, users_distinct, stime,
  // utime, etime and memory.
  std::map<std::string, std::vector<std::uint64_t>> bucket_counts;
};

// Writes cfg.n_records records to sink and returns their ground truth.
// Every record satisfies stime + utime <= etime. Same config, same bytes.
// Throws FieldRangeError when the profile cannot fit the layout (too many
// users for 16-bit uids, a command name longer than 16 characters), and
// IoError when the sink fails.
GenerationSummary GenerateLog(const GeneratorConfig& cfg, std::ostream& sink);

std::string SummaryToJson(const GenerationSummary& summary);

}  // namespace acctlens

#endif  // ACCTLENS_SYNTHGEN_H_

#include "acctlens/synthgen.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "acctlens/errors.h"
#include "acctlens/reports.h"

namespace acctlens {
namespace {

constexpr double kWeightTolerance = 1e-6;
constexpr std::size_t kRecordsPerWrite = 4096;

__extension__ typedef unsigned __int128 Uint128;

// mt19937_64 with explicit mappings to doubles and ranges, so the output
// does not depend on the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t Below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<Uint128>(engine_()) * bound) >> 64);
  }

  std::size_t Pick(const std::vector<double>& cumulative) {
    const double u = Uniform() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
  }

  double Exponential(double mean) { return -std::log1p(-Uniform()) * mean; }

 private:
  std::mt19937_64 engine_;
};

std::vector<double> Cumulative(const std::vector<double>& weights) {
  std::vector<double> out(weights.size());
  std::partial_sum(weights.begin(), weights.end(), out.begin());
  return out;
}

void CheckFamily(const std::vector<double>& weights, std::size_t buckets,
                 const std::string& what) {
  if (weights.size() != buckets) {
    throw std::invalid_argument(what + ": expected " + std::to_string(buckets) +
                                " weights");
  }
  double sum = 0;
  for (double w : weights) {
    if (!(w >= 0)) throw std::invalid_argument(what + ": negative weight");
    sum += w;
  }
  if (std::abs(sum - 1) > kWeightTolerance) {
    throw std::invalid_argument(what + ": weights sum to " +
                                std::to_string(sum));
  }
}

std::size_t LinearBucket(const std::vector<double>& edges, double value) {
  std::size_t bucket = 0;
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (value >= edges[i]) bucket = i;
  }
  return bucket;
}

// Tick count drawn uniformly inside one bucket of spec; open buckets span
// [lo, 4 lo). Rounded up to a comp_t-representable value.
Ticks DrawTicks(Rng& rng, const HistogramSpec& spec,
                const std::vector<double>& cumulative, unsigned ahz) {
  const std::size_t b = rng.Pick(cumulative);
  const double lo = spec.edges[b];
  const double hi = spec.UpperEdge(b).value_or(std::max(4 * lo, lo + 1));
  const Ticks lo_t = SecondsToTicks(lo, ahz);
  const Ticks hi_t = std::max(SecondsToTicks(hi, ahz), lo_t + 1);
  return RoundUpToCompT(lo_t + rng.Below(hi_t - lo_t));
}

std::vector<WeightedCommand> Vocabulary(
    std::initializer_list<std::pair<const char*, double>> items) {
  double sum = 0;
  for (const auto& item : items) sum += item.second;
  std::vector<WeightedCommand> out;
  for (const auto& [comm, w] : items) out.push_back({comm, w / sum});
  return out;
}

// Appends count rare commands ("<prefix>000", ...) sharing share of the
// total weight; the named commands keep the rest.
void AddTail(UserProfile& p, const char* prefix, std::size_t count,
             double share) {
  for (WeightedCommand& c : p.vocabulary) c.weight *= 1 - share;
  for (std::size_t i = 0; i < count; ++i) {
    p.vocabulary.push_back(
        {fmt::format("{}{:03}", prefix, i), share / static_cast<double>(count)});
  }
}

struct UserPlan {
  std::vector<std::size_t> commands;  // indices into the profile vocabulary
  std::vector<double> cumulative;
};

}  // namespace

void ValidateProfile(const UserProfile& p) {
  if (p.vocabulary.empty()) {
    throw std::invalid_argument(p.name + ": empty vocabulary");
  }
  std::vector<double> vocab;
  for (const WeightedCommand& c : p.vocabulary) {
    if (c.comm.empty()) throw std::invalid_argument(p.name + ": empty command");
    vocab.push_back(c.weight);
  }
  CheckFamily(vocab, vocab.size(), p.name + " vocabulary");
  if (p.core_commands == 0 || p.core_commands > p.vocabulary.size()) {
    throw std::invalid_argument(p.name + ": core_commands out of range");
  }
  CheckFamily(p.stime_weights, DefaultSpec("stime").BucketCount(),
              p.name + " stime");
  CheckFamily(p.utime_weights, DefaultSpec("utime").BucketCount(),
              p.name + " utime");
  CheckFamily(p.etime_weights, DefaultSpec("etime").BucketCount(),
              p.name + " etime");
  std::vector<double> mem;
  for (const MemoryComponent& m : p.memory) {
    if (!(m.lo_pages >= 0) || m.lo_pages > m.hi_pages) {
      throw std::invalid_argument(p.name + ": memory range lo > hi");
    }
    mem.push_back(m.weight);
  }
  CheckFamily(mem, mem.size(), p.name + " memory");
  const auto in_unit = [](double x) { return x >= 0 && x <= 1; };
  if (!in_unit(p.superuser_fraction) || !in_unit(p.vocabulary_keep) ||
      !in_unit(p.activity.light_user_fraction) ||
      !in_unit(p.activity.light_record_share)) {
    throw std::invalid_argument(p.name + ": fraction outside [0, 1]");
  }
  if (!(p.mean_interarrival_s > 0)) {
    throw std::invalid_argument(p.name + ": mean_interarrival_s must be > 0");
  }
}

std::vector<UserProfile> BuiltinProfiles() {
  std::vector<UserProfile> profiles;

  // Shell-heavy general-purpose server: remote login, self-identification
  // and mail commands, low memory, users either barely active or busy.
  UserProfile internet;
  internet.name = "internet";
  internet.vocabulary = Vocabulary({
      {"ssh", 14}, {"sh", 9},   {"bash", 6},    {"ls", 8},    {"uname", 6},
      {"hostname", 5}, {"mail", 5}, {"sshd", 5}, {"pine", 4},  {"sendmail", 4},
      {"vi", 4},  {"cat", 4},   {"elm", 3},     {"grep", 3},  {"aklog", 3},
      {"cp", 2},  {"mv", 2},    {"rm", 2},      {"ps", 2},    {"date", 2},
      {"less", 2}, {"who", 1},  {"tar", 1},     {"perl", 1},  {"finger", 1},
      {"lynx", 1}, {"pico", 1}, {"w", 1},       {"id", 1},    {"du", 1},
  });
  AddTail(internet, "bin", 145, 0.06);
  internet.core_commands = 6;
  internet.vocabulary_keep = 0.55;
  internet.activity = {0.5, 0.01};
  internet.stime_weights = {0.14, 0.08, 0.10, 0.36, 0.10, 0.06, 0.04, 0.04, 0.08};
  internet.utime_weights = {0.35, 0.25, 0.17, 0.11, 0.07, 0.05};
  internet.etime_weights = {0.20, 0.18, 0.15, 0.05, 0.06,
                            0.05, 0.05, 0.08, 0.02, 0.16};
  internet.memory = {{0.53, 100, 500}, {0.32, 1000, 3000}, {0.15, 10, 100}};
  internet.superuser_fraction = 0.05;
  internet.mean_interarrival_s = 31.0 * 86400 / 87137;
  internet.default_users = 80;
  profiles.push_back(internet);

  // Compute cluster: restricted command set around the batch scheduler,
  // near-uniform user time, most processes at 2000-7000 pages.
  UserProfile hpc;
  hpc.name = "hpc";
  hpc.vocabulary = Vocabulary({
      {"sh", 12},   {"bash", 8},   {"ls", 9},     {"pbs", 7},   {"cat", 5},
      {"rsync", 5}, {"sleep", 5},  {"libtool", 4}, {"xauth", 4}, {"addpath", 4},
      {"mpirun", 4}, {"make", 4},  {"gcc", 4},    {"cp", 3},    {"mv", 3},
      {"rm", 3},    {"grep", 3},   {"sed", 2},    {"awk", 2},   {"qstat", 2},
      {"qsub", 2},  {"python", 2}, {"tar", 1},    {"ld", 1},    {"f77", 1},
      {"mkdir", 1}, {"date", 1},   {"hostname", 1}, {"env", 1},  {"tail", 1},
      {"head", 1},  {"gzip", 1},   {"ssh", 1},
  });
  AddTail(hpc, "job", 708, 0.03);
  hpc.core_commands = 10;
  hpc.vocabulary_keep = 0.6;
  hpc.activity = {0.2, 0.0005};
  hpc.stime_weights = {0.09, 0.12, 0.12, 0.19, 0.12, 0.08, 0.06, 0.09, 0.13};
  hpc.utime_weights = {0.21, 0.21, 0.22, 0.16, 0.07, 0.13};
  hpc.etime_weights = {0.08, 0.13, 0.12, 0.11, 0.20,
                       0.12, 0.07, 0.06, 0.03, 0.08};
  hpc.memory = {{0.94, 2000, 7000}, {0.04, 200, 2000}, {0.02, 7000, 12000}};
  hpc.superuser_fraction = 0.02;
  hpc.mean_interarrival_s = 28.0 * 86400 / 1853411;
  hpc.default_users = 100;
  profiles.push_back(hpc);

  // Intruder on a stolen account: chat, fetch, build, run.
  UserProfile masq;
  masq.name = "masquerader";
  masq.vocabulary = Vocabulary({
      {"irc", 10}, {"ftp", 8},  {"gcc", 8},   {"wget", 6},  {"make", 5},
      {"tar", 5},  {"gzip", 4}, {"sh", 6},    {"bash", 5},  {"ls", 6},
      {"cc", 4},   {"ld", 3},   {"chmod", 4}, {"ps", 3},    {"w", 3},
      {"id", 3},   {"uname", 3}, {"rm", 2},   {"kill", 2},
  });
  masq.core_commands = 4;
  masq.vocabulary_keep = 0.7;
  masq.activity = {0.0, 0.0};
  masq.stime_weights = {0.30, 0.20, 0.20, 0.10, 0.10, 0.05, 0.02, 0.02, 0.01};
  masq.utime_weights = {0.50, 0.20, 0.10, 0.10, 0.05, 0.05};
  masq.etime_weights = {0.30, 0.20, 0.10, 0.10, 0.10,
                        0.05, 0.05, 0.05, 0.03, 0.02};
  masq.memory = {{1.0, 50, 800}};
  masq.superuser_fraction = 0.0;
  masq.mean_interarrival_s = 5.0;
  masq.default_users = 5;
  profiles.push_back(masq);

  return profiles;
}

UserProfile BuiltinProfile(std::string_view name) {
  for (UserProfile& p : BuiltinProfiles()) {
    if (p.name == name) return std::move(p);
  }
  throw std::out_of_range("unknown profile '" + std::string(name) + "'");
}

GenerationSummary GenerateLog(const GeneratorConfig& cfg, std::ostream& sink) {
  const UserProfile& profile = cfg.profile;
  ValidateProfile(profile);
  if (cfg.ahz == 0) throw std::invalid_argument("ahz must be positive");
  const std::size_t n_users =
      cfg.n_users ? cfg.n_users : profile.default_users;
  if (n_users == 0) throw std::invalid_argument("at least one user required");
  if (kFirstUid + n_users - 1 > std::numeric_limits<std::uint16_t>::max()) {
    throw FieldRangeError("uid", std::to_string(n_users) +
                                     " users exceed the 16-bit uid range");
  }
  for (const WeightedCommand& c : profile.vocabulary) {
    if (c.comm.size() > linux64::kCommMax) {
      throw FieldRangeError("comm", "'" + c.comm + "' is longer than 16");
    }
  }

  const HistogramSpec stime_spec = DefaultSpec("stime");
  const HistogramSpec utime_spec = DefaultSpec("utime");
  const HistogramSpec etime_spec = DefaultSpec("etime");
  const HistogramSpec mem_spec = DefaultSpec("memory");
  const std::vector<double> stime_cum = Cumulative(profile.stime_weights);
  const std::vector<double> utime_cum = Cumulative(profile.utime_weights);
  const std::vector<double> etime_cum = Cumulative(profile.etime_weights);
  std::vector<double> mem_weights;
  for (const MemoryComponent& m : profile.memory) mem_weights.push_back(m.weight);
  const std::vector<double> mem_cum = Cumulative(mem_weights);

  Rng rng(cfg.seed);

  // Per-user personal vocabularies.
  std::vector<UserPlan> plans(n_users);
  for (UserPlan& plan : plans) {
    std::vector<double> weights;
    for (std::size_t i = 0; i < profile.vocabulary.size(); ++i) {
      if (i < profile.core_commands || rng.Uniform() < profile.vocabulary_keep) {
        plan.commands.push_back(i);
        weights.push_back(profile.vocabulary[i].weight);
      }
    }
    plan.cumulative = Cumulative(weights);
  }

  // Activity: a light and a heavy class, jittered within each class.
  const auto light = static_cast<std::size_t>(std::llround(
      static_cast<double>(n_users) * profile.activity.light_user_fraction));
  std::vector<double> activity(n_users);
  for (double& a : activity) a = 0.5 + rng.Uniform();
  const auto scale_class = [&](std::size_t begin, std::size_t end, double share) {
    const double sum =
        std::accumulate(activity.begin() + begin, activity.begin() + end, 0.0);
    for (std::size_t i = begin; i < end; ++i) activity[i] *= share / sum;
  };
  if (light > 0 && light < n_users) {
    scale_class(0, light, profile.activity.light_record_share);
    scale_class(light, n_users, 1 - profile.activity.light_record_share);
  }
  const std::vector<double> user_cum = Cumulative(activity);

  GenerationSummary summary;
  summary.seed = cfg.seed;
  summary.profile = profile.name;
  summary.format = cfg.format;
  summary.order = cfg.order;
  summary.ahz = cfg.ahz;
  std::map<std::uint32_t, std::set<std::string>> user_commands;
  std::map<std::string, std::set<std::uint32_t>> command_users;
  std::vector<std::uint64_t> stime_counts(stime_spec.BucketCount());
  std::vector<std::uint64_t> utime_counts(utime_spec.BucketCount());
  std::vector<std::uint64_t> etime_counts(etime_spec.BucketCount());
  std::vector<std::uint64_t> mem_counts(mem_spec.BucketCount());

  const std::size_t record_size = RecordSize(cfg.format);
  std::vector<std::uint8_t> buffer;
  buffer.reserve(record_size * kRecordsPerWrite);
  const auto flush = [&] {
    sink.write(reinterpret_cast<const char*>(buffer.data()),
               static_cast<std::streamsize>(buffer.size()));
    if (!sink) throw IoError("failed writing generated log");
    buffer.clear();
  };

  double clock = 0;
  for (std::uint64_t n = 0; n < cfg.n_records; ++n) {
    const std::size_t user = rng.Pick(user_cum);
    const UserPlan& plan = plans[user];
    const WeightedCommand& command =
        profile.vocabulary[plan.commands[rng.Pick(plan.cumulative)]];

    const Ticks utime = DrawTicks(rng, utime_spec, utime_cum, cfg.ahz);
    const Ticks stime = DrawTicks(rng, stime_spec, stime_cum, cfg.ahz);
    Ticks etime = DrawTicks(rng, etime_spec, etime_cum, cfg.ahz);
    if (etime < utime + stime) {
      etime = RoundUpToCompT(utime + stime + rng.Below(cfg.ahz));
    }
    const MemoryComponent& mem = profile.memory[rng.Pick(mem_cum)];
    const auto mem_lo = static_cast<Ticks>(mem.lo_pages);
    const auto mem_span =
        std::max<Ticks>(static_cast<Ticks>(mem.hi_pages) - mem_lo, 1);
    const Ticks pages = DecodeCompT(EncodeCompT(mem_lo + rng.Below(mem_span)));
    const bool superuser = rng.Uniform() < profile.superuser_fraction;
    clock += rng.Exponential(profile.mean_interarrival_s);
    const double btime = static_cast<double>(cfg.time_origin) + std::floor(clock);
    if (btime > std::numeric_limits<std::uint32_t>::max()) {
      throw FieldRangeError("btime", "generated time passes 2106");
    }

    ProcessRecord r;
    r.uid = kFirstUid + static_cast<std::uint32_t>(user);
    r.gid = 100 + static_cast<std::uint32_t>(user % 4);
    r.tty = user % 3 == 0 ? 0 : static_cast<std::uint16_t>(0x8800 + user % 64);
    r.comm = command.comm.substr(0, MaxCommLength(cfg.format));
    r.btime = static_cast<std::uint32_t>(btime);
    r.utime_s = TicksToSeconds(utime, cfg.ahz);
    r.stime_s = TicksToSeconds(stime, cfg.ahz);
    r.etime_s = TicksToSeconds(etime, cfg.ahz);
    r.mem_pages = static_cast<double>(pages);
    r.io_blocks = static_cast<double>(rng.Below(64));
    r.rw_blocks = static_cast<double>(rng.Below(64));
    r.flags.superuser = superuser;
    if (cfg.format == FormatKind::kLinux64) {
      LinuxExtras x;
      x.minflt = static_cast<double>(rng.Below(4096));
      x.majflt = static_cast<double>(rng.Below(16));
      r.linux = x;
    } else {
      r.exit_status = 0;
    }

    const std::size_t at = buffer.size();
    buffer.resize(at + record_size);
    EncodeRecordInto(r, cfg.format, cfg.order, cfg.ahz,
                     std::span(buffer).subspan(at, record_size));
    if (buffer.size() == buffer.capacity()) flush();

    ++summary.records_written;
    ++summary.command_counts[r.comm];
    ++summary.users[r.uid].total_commands;
    user_commands[r.uid].insert(r.comm);
    command_users[r.comm].insert(r.uid);
    ++stime_counts[LinearBucket(stime_spec.edges, r.stime_s)];
    ++utime_counts[LinearBucket(utime_spec.edges, r.utime_s)];
    ++etime_counts[LinearBucket(etime_spec.edges, r.etime_s)];
    ++mem_counts[LinearBucket(mem_spec.edges, r.mem_pages)];
    const double first = r.btime;
    summary.first_event =
        summary.first_event ? std::min(*summary.first_event, first) : first;
    summary.last_event = summary.last_event
                             ? std::max(*summary.last_event, r.ExitTime())
                             : r.ExitTime();
  }
  flush();
  sink.flush();
  if (!sink) throw IoError("failed flushing generated log");

  const HistogramSpec users_total = DefaultSpec("users_total");
  const HistogramSpec users_distinct = DefaultSpec("users_distinct");
  std::vector<std::uint64_t> total_counts(users_total.BucketCount());
  std::vector<std::uint64_t> distinct_counts(users_distinct.BucketCount());
  for (auto& [uid, truth] : summary.users) {
    truth.distinct_commands = user_commands[uid].size();
    ++total_counts[LinearBucket(users_total.edges,
                                static_cast<double>(truth.total_commands))];
    ++distinct_counts[LinearBucket(
        users_distinct.edges, static_cast<double>(truth.distinct_commands))];
  }
  for (const auto& [comm, uids] : command_users) {
    summary.command_distinct_users[comm] = uids.size();
  }
  summary.bucket_counts = {
      {"users_total", std::move(total_counts)},
      {"users_distinct", std::move(distinct_counts)},
      {"stime", std::move(stime_counts)},
      {"utime", std::move(utime_counts)},
      {"etime", std::move(etime_counts)},
      {"memory", std::move(mem_counts)},
  };
  return summary;
}

std::string SummaryToJson(const GenerationSummary& s) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["algorithm"] = s.algorithm;
  j["seed"] = s.seed;
  j["profile"] = s.profile;
  j["format_kind"] = std::string(ToString(s.format));
  j["endianness"] = std::string(ToString(s.order));
  j["ahz"] = s.ahz;
  j["records_written"] = s.records_written;
  j["first_event"] = s.first_event ? nlohmann::ordered_json(*s.first_event)
                                   : nlohmann::ordered_json(nullptr);
  j["last_event"] = s.last_event ? nlohmann::ordered_json(*s.last_event)
                                 : nlohmann::ordered_json(nullptr);
  j["command_counts"] = s.command_counts;
  j["command_distinct_users"] = s.command_distinct_users;
  nlohmann::ordered_json users = nlohmann::ordered_json::array();
  for (const auto& [uid, truth] : s.users) {
    users.push_back({{"uid", uid},
                     {"total_commands", truth.total_commands},
                     {"distinct_commands", truth.distinct_commands}});
  }
  j["users"] = std::move(users);
  nlohmann::ordered_json buckets = nlohmann::ordered_json::object();
  for (const std::string_view name :
       {"users_total", "users_distinct", "stime", "utime", "etime", "memory"}) {
    const std::string key(name);
    if (auto it = s.bucket_counts.find(key); it != s.bucket_counts.end()) {
      buckets[key] = {{"edges", DefaultSpec(key).edges}, {"counts", it->second}};
    }
  }
  j["bucket_counts"] = std::move(buckets);
  return j.dump(2) + "\n";
}

}  // namespace acctlens

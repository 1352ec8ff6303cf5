#include "random_logs.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "acctlens/reports.h"

namespace acctlens::testing {
namespace {

std::vector<double> RandomWeights(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(n);
  double sum = 0;
  for (double& x : w) {
    // Some buckets empty on purpose.
    x = u(rng) < 0.2 ? 0.0 : u(rng);
    sum += x;
  }
  if (sum == 0) {
    w[0] = 1;
    return w;
  }
  for (double& x : w) x /= sum;
  return w;
}

std::string RandomName(std::mt19937_64& rng) {
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789_-.";
  std::uniform_int_distribution<int> len(1, 16);
  std::uniform_int_distribution<int> ch(0, sizeof(kAlphabet) - 2);
  std::string s(static_cast<std::size_t>(len(rng)), 'x');
  for (char& c : s) c = kAlphabet[ch(rng)];
  return s;
}

}  // namespace

UserProfile RandomProfile(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> vocab_size(1, 60);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  UserProfile p;
  p.name = "random";
  std::set<std::string> seen;
  const int n = vocab_size(rng);
  while (static_cast<int>(seen.size()) < n) seen.insert(RandomName(rng));
  const std::vector<double> weights = RandomWeights(rng, seen.size());
  std::size_t i = 0;
  for (const std::string& name : seen) p.vocabulary.push_back({name, weights[i++]});
  // Every command needs a chance to be picked.
  for (WeightedCommand& c : p.vocabulary) c.weight = 0.9 * c.weight + 0.1 / n;
  p.core_commands = std::uniform_int_distribution<std::size_t>(
      1, p.vocabulary.size())(rng);
  p.vocabulary_keep = u(rng);
  p.activity = {u(rng), u(rng)};
  p.stime_weights = RandomWeights(rng, DefaultSpec("stime").BucketCount());
  p.utime_weights = RandomWeights(rng, DefaultSpec("utime").BucketCount());
  p.etime_weights = RandomWeights(rng, DefaultSpec("etime").BucketCount());
  const std::size_t components =
      std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  const std::vector<double> mem_weights = RandomWeights(rng, components);
  for (std::size_t c = 0; c < components; ++c) {
    const double lo = std::floor(u(rng) * 8000);
    p.memory.push_back({mem_weights[c], lo, lo + 1 + std::floor(u(rng) * 4000)});
  }
  p.superuser_fraction = u(rng) * 0.3;
  p.mean_interarrival_s = 0.5 + u(rng) * 60;
  p.default_users = std::uniform_int_distribution<std::size_t>(1, 150)(rng);
  return p;
}

GeneratedLog Generate(const GeneratorConfig& cfg) {
  std::ostringstream sink;
  GeneratedLog log;
  log.summary = GenerateLog(cfg, sink);
  const std::string s = sink.str();
  log.bytes.assign(s.begin(), s.end());
  return log;
}

GeneratorConfig RandomConfig(std::uint64_t seed, std::uint64_t n_records) {
  std::mt19937_64 rng(seed);
  GeneratorConfig cfg;
  cfg.profile = RandomProfile(rng);
  cfg.n_records = n_records;
  cfg.seed = seed;
  cfg.format = rng() % 2 ? FormatKind::kSysV32 : FormatKind::kLinux64;
  cfg.order = rng() % 2 ? Endianness::kBig : Endianness::kLittle;
  return cfg;
}

void WriteFile(const std::filesystem::path& path,
               const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

TempDir::TempDir() {
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const auto candidate = std::filesystem::temp_directory_path() /
                           ("acctlens-test-" + std::to_string(rd()));
    if (std::filesystem::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temp dir");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace acctlens::testing

#include "acctlens/detect.h"

#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "acctlens/byte_source.h"
#include "acctlens/errors.h"
#include "support/random_logs.h"

namespace acctlens {
namespace {

using testing::Generate;
using testing::RandomConfig;

constexpr FormatKind kKinds[] = {FormatKind::kSysV32, FormatKind::kLinux64};
constexpr Endianness kOrders[] = {Endianness::kLittle, Endianness::kBig};

std::vector<std::uint8_t> HpcLog(FormatKind kind, Endianness order,
                                 std::uint64_t n, std::uint64_t seed = 1) {
  GeneratorConfig cfg;
  cfg.profile = BuiltinProfile("hpc");
  cfg.n_records = n;
  cfg.seed = seed;
  cfg.format = kind;
  cfg.order = order;
  return Generate(cfg).bytes;
}

TEST(DetectTest, GeneratedLinux64Little) {
  const auto log = HpcLog(FormatKind::kLinux64, Endianness::kLittle, 100);
  const DetectedFormat f = DetectFormat(log, log.size());
  EXPECT_EQ(f.kind, FormatKind::kLinux64);
  EXPECT_EQ(f.order, Endianness::kLittle);
  // uids such as 1024 (0x0400) fail the small-integer check.
  EXPECT_GT(f.score, 0.9);
}

TEST(DetectTest, GeneratedSysV32Big) {
  const auto log = HpcLog(FormatKind::kSysV32, Endianness::kBig, 100);
  const DetectedFormat f = DetectFormat(log, log.size());
  EXPECT_EQ(f.kind, FormatKind::kSysV32);
  EXPECT_EQ(f.order, Endianness::kBig);
}

TEST(DetectTest, EveryLayoutAtAwkwardSizes) {
  for (FormatKind kind : kKinds) {
    for (Endianness order : kOrders) {
      for (std::uint64_t n : {1, 2, 3, 31, 32, 33, 64, 1000}) {
        const auto log = HpcLog(kind, order, n, n);
        const DetectedFormat f = DetectFormat(log, log.size());
        EXPECT_EQ(f.kind, kind) << n;
        EXPECT_EQ(f.order, order) << n;
      }
    }
  }
}

TEST(DetectTest, RandomProfiles) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GeneratorConfig cfg = RandomConfig(seed, 1 + seed * 7);
    const auto log = Generate(cfg).bytes;
    const DetectedFormat f = DetectFormat(log, log.size());
    EXPECT_EQ(f.kind, cfg.format) << seed;
    EXPECT_EQ(f.order, cfg.order) << seed;
  }
}

TEST(DetectTest, Size33IsTruncated) {
  const std::vector<std::uint8_t> bytes(33, 0);
  EXPECT_THROW(DetectFormat(bytes, bytes.size()), TruncatedFile);
}

TEST(DetectTest, EmptyIsUnknown) {
  EXPECT_THROW(DetectFormat({}, 0), UnknownFormat);
}

TEST(DetectTest, ImplausibleBtimeIsUnknown) {
  // Every byte 0xFF: btime 0xFFFFFFFF is past 2100 in both byte orders.
  std::vector<std::uint8_t> bytes(640, 0xFF);
  EXPECT_THROW(DetectFormat(bytes, bytes.size()), UnknownFormat);
  // All zero: btime 0 is before 1985.
  std::fill(bytes.begin(), bytes.end(), 0);
  EXPECT_THROW(DetectFormat(bytes, bytes.size()), UnknownFormat);
}

TEST(DetectTest, RandomBytesWithImplausibleBtimeAreUnknown) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::uint8_t> bytes(32 * (1 + rng() % 100));
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
    // Zero outer btime bytes: below 2^24 seconds (1970) in both byte orders.
    for (std::size_t at = 0; at < bytes.size(); at += 32) {
      bytes[at + 8] = 0;
      bytes[at + 11] = 0;
    }
    EXPECT_THROW(DetectFormat(bytes, bytes.size()), UnknownFormat) << i;
  }
}

TEST(DetectTest, HintsRestrictCandidates) {
  const auto log = HpcLog(FormatKind::kSysV32, Endianness::kLittle, 64);
  DetectionHints hints;
  hints.order = Endianness::kLittle;
  EXPECT_EQ(DetectFormat(log, log.size(), hints).kind, FormatKind::kSysV32);
  const double native = DetectFormat(log, log.size(), hints).score;
  // A swapped 2006 btime reads as 2038, so the big-endian reading stays
  // admissible; it just scores lower.
  hints.order = Endianness::kBig;
  const DetectedFormat swapped = DetectFormat(log, log.size(), hints);
  EXPECT_EQ(swapped.order, Endianness::kBig);
  EXPECT_LT(swapped.score, native);
  hints = {};
  hints.kind = FormatKind::kSysV32;
  EXPECT_EQ(DetectFormat(log, log.size(), hints).order, Endianness::kLittle);
}

TEST(DetectTest, ByteSourceOverloadRewinds) {
  const auto log = HpcLog(FormatKind::kLinux64, Endianness::kBig, 500);
  MemoryByteSource source(log);
  const DetectedFormat f = DetectFormat(source);
  EXPECT_EQ(f.kind, FormatKind::kLinux64);
  EXPECT_EQ(f.order, Endianness::kBig);
  std::vector<std::uint8_t> first(64);
  ASSERT_EQ(source.Read(first), 64u);
  EXPECT_TRUE(std::equal(first.begin(), first.end(), log.begin()));
}

}  // namespace
}  // namespace acctlens

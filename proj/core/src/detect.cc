#include "acctlens/detect.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "acctlens/errors.h"

namespace acctlens {
namespace {

namespace off = common_offsets;

struct Candidate {
  FormatKind kind;
  Endianness order;
};

// Linux64 first: a 64-byte-divisible file is also 32-byte-divisible.
constexpr std::array<Candidate, 4> kCandidates = {{
    {FormatKind::kLinux64, Endianness::kLittle},
    {FormatKind::kLinux64, Endianness::kBig},
    {FormatKind::kSysV32, Endianness::kLittle},
    {FormatKind::kSysV32, Endianness::kBig},
}};

Endianness Other(Endianness order) {
  return order == Endianness::kLittle ? Endianness::kBig : Endianness::kLittle;
}

bool PlausibleComm(const std::uint8_t* field, std::size_t len) {
  std::size_t n = 0;
  while (n < len && field[n] != 0) {
    if (field[n] < 0x20 || field[n] >= 0x7F) return false;
    ++n;
  }
  return n > 0;
}

std::uint8_t KnownFlagBits(FormatKind kind) {
  std::uint8_t known = kFlagBits.fork_no_exec | kFlagBits.superuser |
                       kFlagBits.core_dumped | kFlagBits.killed_by_signal;
  if (kind == FormatKind::kLinux64) known |= kBigEndianFlag;
  return known;
}

struct Tally {
  int passed = 0;
  int checks = 0;
  void Check(bool ok) {
    ++checks;
    if (ok) ++passed;
  }
};

// Returns false when the candidate is inadmissible; otherwise adds the
// record's soft checks to tally.
bool ProbeRecord(const std::uint8_t* rec, const Candidate& c, Tally& tally) {
  const std::uint32_t btime = LoadU32(rec + off::kBtime, c.order);
  if (btime < kMinPlausibleBtime || btime >= kMaxPlausibleBtime) return false;
  if (c.kind == FormatKind::kLinux64 &&
      rec[linux64::kVersion] > linux64::kMaxVersion) {
    return false;
  }

  const std::uint8_t flag = rec[0];
  const bool linux = c.kind == FormatKind::kLinux64;
  tally.Check(linux ? PlausibleComm(rec + linux64::kComm, linux64::kCommField)
                    : PlausibleComm(rec + sysv32::kComm, sysv32::kCommField));

  const auto ticks = [&](std::size_t at) {
    return DecodeCompT(CompT{LoadU16(rec + at, c.order)});
  };
  tally.Check(ticks(off::kUtime) + ticks(off::kStime) <= ticks(off::kEtime));
  tally.Check((flag & ~KnownFlagBits(c.kind)) == 0);

  // Small integers have zero high bytes in the right byte order.
  const Endianness other = Other(c.order);
  tally.Check(LoadU16(rec + off::kUid, c.order) <=
                  LoadU16(rec + off::kUid, other) &&
              LoadU16(rec + off::kGid, c.order) <=
                  LoadU16(rec + off::kGid, other));

  if (linux) {
    const std::uint8_t* pad = rec + linux64::kPadding;
    tally.Check(std::all_of(pad, pad + linux64::kPaddingLen,
                            [](std::uint8_t b) { return b == 0; }));
    tally.Check(((flag & kBigEndianFlag) != 0) == (c.order == Endianness::kBig));
  }
  return true;
}

}  // namespace

DetectedFormat DetectFormat(std::span<const std::uint8_t> head,
                            std::uint64_t total_size,
                            const DetectionHints& hints) {
  if (total_size == 0) throw UnknownFormat("empty file: no records to probe");
  if (total_size % sysv32::kSize != 0) {
    throw TruncatedFile("file length " + std::to_string(total_size) +
                        " is not a multiple of 32 bytes");
  }

  std::optional<DetectedFormat> best;
  for (const Candidate& c : kCandidates) {
    if (hints.kind && *hints.kind != c.kind) continue;
    if (hints.order && *hints.order != c.order) continue;
    const std::size_t size = RecordSize(c.kind);
    if (total_size % size != 0) continue;

    const std::size_t probe = static_cast<std::size_t>(
        std::min<std::uint64_t>(kProbeRecords, total_size / size));
    if (head.size() < probe * size) {
      throw std::invalid_argument("detection head shorter than probe window");
    }
    Tally tally;
    bool admissible = true;
    for (std::size_t i = 0; i < probe && admissible; ++i) {
      admissible = ProbeRecord(head.data() + i * size, c, tally);
    }
    if (!admissible) continue;

    const double score = static_cast<double>(tally.passed) / tally.checks;
    if (!best || score > best->score) best = DetectedFormat{c.kind, c.order, score};
  }
  if (!best) {
    throw UnknownFormat("no known accounting layout matches (" +
                        std::to_string(total_size) + " bytes)");
  }
  return *best;
}

DetectedFormat DetectFormat(ByteSource& source, const DetectionHints& hints) {
  const std::uint64_t total = source.Size();
  std::vector<std::uint8_t> head(
      static_cast<std::size_t>(std::min<std::uint64_t>(total, kProbeBytes)));
  std::size_t got = 0;
  while (got < head.size()) {
    const std::size_t n =
        source.Read(std::span(head).subspan(got));
    if (n == 0) break;
    got += n;
  }
  source.Rewind();
  head.resize(got);
  return DetectFormat(head, total, hints);
}

}  // namespace acctlens

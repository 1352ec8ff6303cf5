#ifndef ACCTLENS_DETECT_H_
#define ACCTLENS_DETECT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "acctlens/byte_source.h"
#include "acctlens/format.h"

namespace acctlens {

// Records inspected from the head of a file.
inline constexpr std::size_t kProbeRecords = 32;
// Bytes of head needed to probe any candidate layout.
inline constexpr std::size_t kProbeBytes = kProbeRecords * linux64::kSize;

// Plausible ac_btime window: [1985-01-01, 2100-01-01) UTC.
inline constexpr std::uint32_t kMinPlausibleBtime = 473385600u;
inline constexpr std::uint32_t kMaxPlausibleBtime = 4102444800u;

struct DetectionHints {
  std::optional<FormatKind> kind;
  std::optional<Endianness> order;
};

struct DetectedFormat {
  FormatKind kind = FormatKind::kLinux64;
  Endianness order = Endianness::kLittle;
  // Fraction of soft plausibility checks passed over the probed records.
  double score = 0;
};

// Identifies the layout from the first bytes of a log. head must hold at
// least min(total_size, kProbeBytes) bytes.
//
// A candidate (kind, order) is admissible when the length divides evenly
// into records, every probed ac_btime falls in the plausible window and,
// for Linux64, every probed ac_version is 0..3. Admissible candidates are
// ranked by per-record soft checks (printable NUL-terminated comm, time
// relation, known flag bits, small-integer uid/gid, Linux64 zero padding and
// byte-order flag); ties prefer Linux64, then little-endian.
//
// Throws TruncatedFile when total_size is not a multiple of 32, and
// UnknownFormat when the file is empty or no candidate is admissible.
DetectedFormat DetectFormat(std::span<const std::uint8_t> head,
                            std::uint64_t total_size,
                            const DetectionHints& hints = {});

// Reads the head of source, then rewinds it.
DetectedFormat DetectFormat(ByteSource& source,
                            const DetectionHints& hints = {});

}  // namespace acctlens

#endif  // ACCTLENS_DETECT_H_

#ifndef ACCTLENS_FORMAT_H_
#define ACCTLENS_FORMAT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acctlens/comp_t.h"

namespace acctlens {

// On-disk record layouts.
//
// SysV32 (32 bytes)                  Linux64 (64 bytes)
//   @0  u8   ac_flag                   @0  u8   ac_flag
//   @1  u8   ac_stat                   @1  u8   ac_version
//   @2  u16  ac_uid                    @2  u16  ac_uid
//   @4  u16  ac_gid                    @4  u16  ac_gid
//   @6  u16  ac_tty                    @6  u16  ac_tty
//   @8  u32  ac_btime                  @8  u32  ac_btime
//   @12 comp ac_utime                  @12 comp ac_utime
//   @14 comp ac_stime                  @14 comp ac_stime
//   @16 comp ac_etime                  @16 comp ac_etime
//   @18 comp ac_mem                    @18 comp ac_mem
//   @20 comp ac_io                     @20 comp ac_io
//   @22 comp ac_rw                     @22 comp ac_rw
//   @24 char ac_comm[8]                @24 comp ac_minflt
//                                      @26 comp ac_majflt
//                                      @28 comp ac_swaps
//                                      @30 u32  ac_exitcode
//                                      @34 char ac_comm[17]
//                                      @51 13 bytes padding (zero)
enum class FormatKind { kSysV32, kLinux64 };
enum class Endianness { kLittle, kBig };

namespace sysv32 {
inline constexpr std::size_t kSize = 32;
inline constexpr std::size_t kFlag = 0;
inline constexpr std::size_t kStat = 1;
inline constexpr std::size_t kComm = 24;
inline constexpr std::size_t kCommField = 8;
inline constexpr std::size_t kCommMax = 8;
}  // namespace sysv32

namespace linux64 {
inline constexpr std::size_t kSize = 64;
inline constexpr std::size_t kFlag = 0;
inline constexpr std::size_t kVersion = 1;
inline constexpr std::size_t kMinflt = 24;
inline constexpr std::size_t kMajflt = 26;
inline constexpr std::size_t kSwaps = 28;
inline constexpr std::size_t kExitcode = 30;
inline constexpr std::size_t kComm = 34;
inline constexpr std::size_t kCommField = 17;
inline constexpr std::size_t kCommMax = 16;
inline constexpr std::size_t kPadding = 51;
inline constexpr std::size_t kPaddingLen = 13;
inline constexpr std::uint8_t kMaxVersion = 3;
inline constexpr std::uint8_t kWrittenVersion = 2;
}  // namespace linux64

// Fields shared by both layouts.
namespace common_offsets {
inline constexpr std::size_t kUid = 2;
inline constexpr std::size_t kGid = 4;
inline constexpr std::size_t kTty = 6;
inline constexpr std::size_t kBtime = 8;
inline constexpr std::size_t kUtime = 12;
inline constexpr std::size_t kStime = 14;
inline constexpr std::size_t kEtime = 16;
inline constexpr std::size_t kMem = 18;
inline constexpr std::size_t kIo = 20;
inline constexpr std::size_t kRw = 22;
}  // namespace common_offsets

constexpr std::size_t RecordSize(FormatKind kind) {
  return kind == FormatKind::kSysV32 ? sysv32::kSize : linux64::kSize;
}

constexpr std::size_t MaxCommLength(FormatKind kind) {
  return kind == FormatKind::kSysV32 ? sysv32::kCommMax : linux64::kCommMax;
}

std::string_view ToString(FormatKind kind);
std::string_view ToString(Endianness order);
// Accepts "sysv"/"sysv32" and "linux"/"linux64".
std::optional<FormatKind> ParseFormatKind(std::string_view text);
std::optional<Endianness> ParseEndianness(std::string_view text);

// ac_flag bit assignment. Kept in one table so a platform with a different
// assignment only needs a new table.
struct FlagBits {
  std::uint8_t fork_no_exec = 0x01;
  std::uint8_t superuser = 0x02;
  std::uint8_t core_dumped = 0x08;
  std::uint8_t killed_by_signal = 0x10;
};
inline constexpr FlagBits kFlagBits{};

// Linux sets this ac_flag bit when the file was written big-endian.
inline constexpr std::uint8_t kBigEndianFlag = 0x80;

struct FlagSet {
  bool fork_no_exec = false;
  bool superuser = false;
  bool core_dumped = false;
  bool killed_by_signal = false;

  friend bool operator==(const FlagSet&, const FlagSet&) = default;
};

FlagSet DecodeFlags(std::uint8_t ac_flag, const FlagBits& bits = kFlagBits);
std::uint8_t EncodeFlags(const FlagSet& flags,
                         const FlagBits& bits = kFlagBits);
// lastcomm-style letters for the set flags in "SFDX" order, e.g. "S" or
// "FX"; empty when none are set.
std::string FlagLetters(const FlagSet& flags);

struct LinuxExtras {
  std::uint8_t version = linux64::kWrittenVersion;
  double minflt = 0;
  double majflt = 0;
  double swaps = 0;
  std::uint32_t exitcode = 0;

  friend bool operator==(const LinuxExtras&, const LinuxExtras&) = default;
};

// One accounting record, normalized: times in seconds, memory in 8K pages.
struct ProcessRecord {
  std::uint32_t uid = 0;
  std::uint32_t gid = 0;
  std::uint16_t tty = 0;
  std::string comm;
  std::uint32_t btime = 0;  // seconds since the epoch
  double utime_s = 0;
  double stime_s = 0;
  double etime_s = 0;
  double mem_pages = 0;
  double io_blocks = 0;
  double rw_blocks = 0;
  FlagSet flags;
  std::optional<std::uint8_t> exit_status;  // SysV32 ac_stat
  std::optional<LinuxExtras> linux;         // Linux64 only

  double ExitTime() const { return static_cast<double>(btime) + etime_s; }

  friend bool operator==(const ProcessRecord&, const ProcessRecord&) = default;
};

// Decodes one record. bytes.size() must equal RecordSize(kind). Throws
// MalformedRecord on a wrong length, or when ac_comm has no NUL terminator
// and holds non-printable bytes past its first position.
ProcessRecord ParseRecord(std::span<const std::uint8_t> bytes, FormatKind kind,
                          Endianness order, unsigned ahz = kDefaultAhz);

// Writes RecordSize(kind) bytes into out. comm is truncated to the layout's
// maximum. Throws FieldRangeError naming the first field that does not fit.
void EncodeRecordInto(const ProcessRecord& record, FormatKind kind,
                      Endianness order, unsigned ahz,
                      std::span<std::uint8_t> out);

std::vector<std::uint8_t> EncodeRecord(const ProcessRecord& record,
                                       FormatKind kind, Endianness order,
                                       unsigned ahz = kDefaultAhz);

// Byte-order helpers for the fixed-width integer fields.
std::uint16_t LoadU16(const std::uint8_t* p, Endianness order);
std::uint32_t LoadU32(const std::uint8_t* p, Endianness order);
void StoreU16(std::uint8_t* p, std::uint16_t v, Endianness order);
void StoreU32(std::uint8_t* p, std::uint32_t v, Endianness order);

}  // namespace acctlens

#endif  // ACCTLENS_FORMAT_H_

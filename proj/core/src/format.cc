#include "acctlens/format.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "acctlens/errors.h"

namespace acctlens {
namespace {

namespace off = common_offsets;

bool IsPrintable(std::uint8_t c) { return c >= 0x20 && c < 0x7F; }

std::string ExtractComm(const std::uint8_t* field, std::size_t field_len,
                        std::size_t max_len) {
  const std::uint8_t* end = field + field_len;
  const std::uint8_t* nul = std::find(field, end, std::uint8_t{0});
  if (nul == end) {
    for (std::size_t i = 1; i < field_len; ++i) {
      if (!IsPrintable(field[i])) {
        throw MalformedRecord(
            "ac_comm is not NUL-terminated and holds non-printable bytes");
      }
    }
  }
  const std::size_t len =
      std::min(static_cast<std::size_t>(nul - field), max_len);
  return std::string(reinterpret_cast<const char*>(field), len);
}

double CompAt(const std::uint8_t* p, Endianness order) {
  return static_cast<double>(DecodeCompT(CompT{LoadU16(p, order)}));
}

double TimeAt(const std::uint8_t* p, Endianness order, unsigned ahz) {
  return TicksToSeconds(DecodeCompT(CompT{LoadU16(p, order)}), ahz);
}

// Nonnegative finite count -> comp_t, or FieldRangeError.
CompT CheckedComp(double value, const char* field) {
  if (!std::isfinite(value) || value < 0) {
    throw FieldRangeError(field, "must be a finite nonnegative number");
  }
  const double rounded = std::round(value);
  if (rounded > static_cast<double>(kMaxCompTTicks)) {
    throw FieldRangeError(field, "exceeds comp_t maximum");
  }
  return EncodeCompT(static_cast<Ticks>(rounded));
}

CompT CheckedTime(double seconds, unsigned ahz, const char* field) {
  if (!std::isfinite(seconds) || seconds < 0) {
    throw FieldRangeError(field, "must be a finite nonnegative time");
  }
  return CheckedComp(seconds * static_cast<double>(ahz), field);
}

std::uint16_t Checked16(std::uint32_t value, const char* field) {
  if (value > std::numeric_limits<std::uint16_t>::max()) {
    throw FieldRangeError(field, std::to_string(value) + " exceeds 16 bits");
  }
  return static_cast<std::uint16_t>(value);
}

}  // namespace

std::string_view ToString(FormatKind kind) {
  return kind == FormatKind::kSysV32 ? "sysv32" : "linux64";
}

std::string_view ToString(Endianness order) {
  return order == Endianness::kLittle ? "little" : "big";
}

std::optional<FormatKind> ParseFormatKind(std::string_view text) {
  if (text == "sysv" || text == "sysv32") return FormatKind::kSysV32;
  if (text == "linux" || text == "linux64") return FormatKind::kLinux64;
  return std::nullopt;
}

std::optional<Endianness> ParseEndianness(std::string_view text) {
  if (text == "little" || text == "le") return Endianness::kLittle;
  if (text == "big" || text == "be") return Endianness::kBig;
  return std::nullopt;
}

FlagSet DecodeFlags(std::uint8_t ac_flag, const FlagBits& bits) {
  FlagSet flags;
  flags.fork_no_exec = (ac_flag & bits.fork_no_exec) != 0;
  flags.superuser = (ac_flag & bits.superuser) != 0;
  flags.core_dumped = (ac_flag & bits.core_dumped) != 0;
  flags.killed_by_signal = (ac_flag & bits.killed_by_signal) != 0;
  return flags;
}

std::uint8_t EncodeFlags(const FlagSet& flags, const FlagBits& bits) {
  std::uint8_t v = 0;
  if (flags.fork_no_exec) v |= bits.fork_no_exec;
  if (flags.superuser) v |= bits.superuser;
  if (flags.core_dumped) v |= bits.core_dumped;
  if (flags.killed_by_signal) v |= bits.killed_by_signal;
  return v;
}

std::string FlagLetters(const FlagSet& flags) {
  std::string out;
  if (flags.superuser) out += 'S';
  if (flags.fork_no_exec) out += 'F';
  if (flags.core_dumped) out += 'D';
  if (flags.killed_by_signal) out += 'X';
  return out;
}

std::uint16_t LoadU16(const std::uint8_t* p, Endianness order) {
  return order == Endianness::kLittle
             ? static_cast<std::uint16_t>(p[0] | (p[1] << 8))
             : static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

std::uint32_t LoadU32(const std::uint8_t* p, Endianness order) {
  if (order == Endianness::kLittle) {
    return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) |
           (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[3]} << 24);
  }
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
         (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

void StoreU16(std::uint8_t* p, std::uint16_t v, Endianness order) {
  if (order == Endianness::kLittle) {
    p[0] = static_cast<std::uint8_t>(v);
    p[1] = static_cast<std::uint8_t>(v >> 8);
  } else {
    p[0] = static_cast<std::uint8_t>(v >> 8);
    p[1] = static_cast<std::uint8_t>(v);
  }
}

void StoreU32(std::uint8_t* p, std::uint32_t v, Endianness order) {
  for (int i = 0; i < 4; ++i) {
    const int shift = order == Endianness::kLittle ? 8 * i : 8 * (3 - i);
    p[i] = static_cast<std::uint8_t>(v >> shift);
  }
}

ProcessRecord ParseRecord(std::span<const std::uint8_t> bytes, FormatKind kind,
                          Endianness order, unsigned ahz) {
  if (bytes.size() != RecordSize(kind)) {
    throw MalformedRecord("record is " + std::to_string(bytes.size()) +
                          " bytes, expected " +
                          std::to_string(RecordSize(kind)));
  }
  if (ahz == 0) throw std::invalid_argument("ahz must be positive");
  const std::uint8_t* p = bytes.data();

  ProcessRecord r;
  r.flags = DecodeFlags(p[0]);
  r.uid = LoadU16(p + off::kUid, order);
  r.gid = LoadU16(p + off::kGid, order);
  r.tty = LoadU16(p + off::kTty, order);
  r.btime = LoadU32(p + off::kBtime, order);
  r.utime_s = TimeAt(p + off::kUtime, order, ahz);
  r.stime_s = TimeAt(p + off::kStime, order, ahz);
  r.etime_s = TimeAt(p + off::kEtime, order, ahz);
  r.mem_pages = CompAt(p + off::kMem, order);
  r.io_blocks = CompAt(p + off::kIo, order);
  r.rw_blocks = CompAt(p + off::kRw, order);

  if (kind == FormatKind::kSysV32) {
    r.exit_status = p[sysv32::kStat];
    r.comm = ExtractComm(p + sysv32::kComm, sysv32::kCommField,
                         sysv32::kCommMax);
  } else {
    LinuxExtras x;
    x.version = p[linux64::kVersion];
    x.minflt = CompAt(p + linux64::kMinflt, order);
    x.majflt = CompAt(p + linux64::kMajflt, order);
    x.swaps = CompAt(p + linux64::kSwaps, order);
    x.exitcode = LoadU32(p + linux64::kExitcode, order);
    r.linux = x;
    r.comm = ExtractComm(p + linux64::kComm, linux64::kCommField,
                         linux64::kCommMax);
  }
  return r;
}

void EncodeRecordInto(const ProcessRecord& r, FormatKind kind,
                      Endianness order, unsigned ahz,
                      std::span<std::uint8_t> out) {
  if (out.size() != RecordSize(kind)) {
    throw std::invalid_argument("output span does not match record size");
  }
  if (ahz == 0) throw std::invalid_argument("ahz must be positive");
  if (r.comm.find('\0') != std::string::npos) {
    throw FieldRangeError("comm", "contains a NUL byte");
  }

  // Validate everything before touching the output.
  const std::uint16_t uid = Checked16(r.uid, "uid");
  const std::uint16_t gid = Checked16(r.gid, "gid");
  const CompT utime = CheckedTime(r.utime_s, ahz, "utime");
  const CompT stime = CheckedTime(r.stime_s, ahz, "stime");
  const CompT etime = CheckedTime(r.etime_s, ahz, "etime");
  const CompT mem = CheckedComp(r.mem_pages, "mem");
  const CompT io = CheckedComp(r.io_blocks, "io");
  const CompT rw = CheckedComp(r.rw_blocks, "rw");
  const LinuxExtras x = r.linux.value_or(LinuxExtras{});
  CompT minflt, majflt, swaps;
  if (kind == FormatKind::kLinux64) {
    if (x.version > linux64::kMaxVersion) {
      throw FieldRangeError("version", std::to_string(x.version) + " > 3");
    }
    minflt = CheckedComp(x.minflt, "minflt");
    majflt = CheckedComp(x.majflt, "majflt");
    swaps = CheckedComp(x.swaps, "swaps");
  }

  std::uint8_t* p = out.data();
  std::fill(out.begin(), out.end(), std::uint8_t{0});

  std::uint8_t flag = EncodeFlags(r.flags);
  StoreU16(p + off::kUid, uid, order);
  StoreU16(p + off::kGid, gid, order);
  StoreU16(p + off::kTty, r.tty, order);
  StoreU32(p + off::kBtime, r.btime, order);
  StoreU16(p + off::kUtime, utime.raw, order);
  StoreU16(p + off::kStime, stime.raw, order);
  StoreU16(p + off::kEtime, etime.raw, order);
  StoreU16(p + off::kMem, mem.raw, order);
  StoreU16(p + off::kIo, io.raw, order);
  StoreU16(p + off::kRw, rw.raw, order);

  const std::size_t comm_len = std::min(r.comm.size(), MaxCommLength(kind));
  if (kind == FormatKind::kSysV32) {
    p[sysv32::kStat] = r.exit_status.value_or(0);
    std::copy_n(r.comm.data(), comm_len, p + sysv32::kComm);
  } else {
    p[linux64::kVersion] = x.version;
    StoreU16(p + linux64::kMinflt, minflt.raw, order);
    StoreU16(p + linux64::kMajflt, majflt.raw, order);
    StoreU16(p + linux64::kSwaps, swaps.raw, order);
    StoreU32(p + linux64::kExitcode, x.exitcode, order);
    std::copy_n(r.comm.data(), comm_len, p + linux64::kComm);
    if (order == Endianness::kBig) flag |= kBigEndianFlag;
  }
  p[0] = flag;
}

std::vector<std::uint8_t> EncodeRecord(const ProcessRecord& record,
                                       FormatKind kind, Endianness order,
                                       unsigned ahz) {
  std::vector<std::uint8_t> out(RecordSize(kind));
  EncodeRecordInto(record, kind, order, ahz, out);
  return out;
}

}  // namespace acctlens

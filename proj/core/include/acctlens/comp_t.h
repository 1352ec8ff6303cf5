#ifndef ACCTLENS_COMP_T_H_
#define ACCTLENS_COMP_T_H_

#include <cstdint>

namespace acctlens {

// Accounting clock ticks.
using Ticks = std::uint64_t;

// Default accounting clock rate (ticks per second).
inline constexpr unsigned kDefaultAhz = 100;

// 16-bit compressed counter used by every time/memory/io field of an
// accounting record: 3-bit base-8 exponent in bits 15-13, 13-bit mantissa in
// bits 12-0.
struct CompT {
  std::uint16_t raw = 0;

  friend constexpr bool operator==(CompT, CompT) = default;
};

inline constexpr std::uint16_t kCompTMantissaMask = 0x1FFF;
inline constexpr unsigned kCompTExponentShift = 13;
inline constexpr Ticks kMaxCompTTicks = Ticks{kCompTMantissaMask} << 21;

constexpr Ticks DecodeCompT(CompT value) noexcept {
  const Ticks mantissa = value.raw & kCompTMantissaMask;
  const unsigned exponent = (value.raw >> kCompTExponentShift) & 0x7;
  return mantissa << (3 * exponent);
}

// Smallest-exponent encoding. Values above 8191 lose their low bits (3 per
// exponent step), so DecodeCompT(EncodeCompT(t)) <= t with relative error
// below 1/1024. Throws OverflowError when ticks > kMaxCompTTicks.
CompT EncodeCompT(Ticks ticks);

// Smallest exactly representable tick count >= ticks. Throws OverflowError
// when no such value exists.
Ticks RoundUpToCompT(Ticks ticks);

// ahz must be > 0.
constexpr double TicksToSeconds(Ticks ticks, unsigned ahz) noexcept {
  return static_cast<double>(ticks) / static_cast<double>(ahz);
}

// Nearest tick. Negative or non-finite input is the caller's problem; see
// EncodeRecord for the checked path.
Ticks SecondsToTicks(double seconds, unsigned ahz) noexcept;

}  // namespace acctlens

#endif  // ACCTLENS_COMP_T_H_

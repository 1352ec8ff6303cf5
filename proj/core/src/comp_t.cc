#include "acctlens/comp_t.h"

#include <cmath>
#include <string>

#include "acctlens/errors.h"

namespace acctlens {

CompT EncodeCompT(Ticks ticks) {
  if (ticks > kMaxCompTTicks) {
    throw OverflowError("tick count " + std::to_string(ticks) +
                        " exceeds comp_t maximum");
  }
  unsigned exponent = 0;
  while (ticks > kCompTMantissaMask) {
    ticks >>= 3;
    ++exponent;
  }
  return CompT{static_cast<std::uint16_t>((exponent << kCompTExponentShift) |
                                          static_cast<unsigned>(ticks))};
}

Ticks RoundUpToCompT(Ticks ticks) {
  const CompT down = EncodeCompT(ticks);
  const Ticks value = DecodeCompT(down);
  if (value == ticks) return value;
  // Next representable value above: bump the mantissa in the same exponent.
  const unsigned exponent = (down.raw >> kCompTExponentShift) & 0x7;
  const Ticks step = Ticks{1} << (3 * exponent);
  const Ticks up = value + step;
  if (up > kMaxCompTTicks) {
    throw OverflowError("tick count " + std::to_string(ticks) +
                        " has no comp_t representation at or above it");
  }
  return up;
}

Ticks SecondsToTicks(double seconds, unsigned ahz) noexcept {
  return static_cast<Ticks>(std::llround(seconds * static_cast<double>(ahz)));
}

}  // namespace acctlens

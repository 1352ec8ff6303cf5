#include "acctlens/distinct_counter.h"

#include <bit>
#include <cmath>
#include <functional>

namespace acctlens {
namespace {

// splitmix64 finalizer; std::hash is not required to mix its bits.
std::uint64_t Mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

DistinctCounter::DistinctCounter(DistinctMode mode) : mode_(mode) {
  if (mode_ == DistinctMode::kSketch) registers_.assign(1u << kPrecision, 0);
}

void DistinctCounter::Add(std::string_view value) {
  if (mode_ == DistinctMode::kExact) {
    exact_.emplace(value);
    return;
  }
  const std::uint64_t h = Mix(std::hash<std::string_view>{}(value));
  const std::size_t index = h >> (64 - kPrecision);
  const std::uint64_t rest = (h << kPrecision) | (1ull << (kPrecision - 1));
  const auto rank = static_cast<std::uint8_t>(std::countl_zero(rest) + 1);
  if (rank > registers_[index]) registers_[index] = rank;
}

std::uint64_t DistinctCounter::Count() const {
  if (mode_ == DistinctMode::kExact) return exact_.size();
  const double m = static_cast<double>(registers_.size());
  double sum = 0;
  int zeros = 0;
  for (std::uint8_t r : registers_) {
    sum += std::ldexp(1.0, -r);
    if (r == 0) ++zeros;
  }
  const double alpha = 0.7213 / (1 + 1.079 / m);
  double estimate = alpha * m * m / sum;
  if (estimate <= 2.5 * m && zeros > 0) {
    estimate = m * std::log(m / zeros);  // linear counting
  }
  return static_cast<std::uint64_t>(std::llround(estimate));
}

}  // namespace acctlens

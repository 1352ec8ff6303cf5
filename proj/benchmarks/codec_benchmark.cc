#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "acctlens/comp_t.h"
#include "acctlens/format.h"

namespace acctlens {
namespace {

void BM_DecodeCompT(benchmark::State& state) {
  std::uint32_t raw = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(DecodeCompT(CompT{static_cast<std::uint16_t>(raw)}));
    raw = (raw + 7919) & 0xFFFF;
  }
}
BENCHMARK(BM_DecodeCompT);

void BM_EncodeCompT(benchmark::State& state) {
  Ticks t = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EncodeCompT(t));
    t = (t * 6364136223846793005ull + 1442695040888963407ull) % kMaxCompTTicks;
  }
}
BENCHMARK(BM_EncodeCompT);

void BM_ParseRecord(benchmark::State& state) {
  const auto kind = static_cast<FormatKind>(state.range(0));
  ProcessRecord r;
  r.uid = 1001;
  r.gid = 100;
  r.comm = "benchmark";
  r.btime = 1136073600;
  r.utime_s = 1.5;
  r.stime_s = 0.25;
  r.etime_s = 12;
  r.mem_pages = 3000;
  const std::vector<std::uint8_t> bytes =
      EncodeRecord(r, kind, Endianness::kLittle);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ParseRecord(bytes, kind, Endianness::kLittle));
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_ParseRecord)
    ->Arg(static_cast<int>(FormatKind::kSysV32))
    ->Arg(static_cast<int>(FormatKind::kLinux64));

}  // namespace
}  // namespace acctlens

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "acctlens/byte_source.h"
#include "acctlens/detect.h"
#include "acctlens/pipeline.h"
#include "acctlens/synthgen.h"

namespace acctlens {
namespace {

std::vector<std::uint8_t> GeneratedLog(std::uint64_t records) {
  GeneratorConfig cfg;
  cfg.profile = BuiltinProfile("hpc");
  cfg.n_records = records;
  cfg.seed = 42;
  std::ostringstream sink;
  GenerateLog(cfg, sink);
  const std::string bytes = sink.str();
  return std::vector<std::uint8_t>(bytes.begin(), bytes.end());
}

void BM_AllReports(benchmark::State& state) {
  const std::vector<std::uint8_t> log =
      GeneratedLog(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    MemoryByteSource source(log);
    benchmark::DoNotOptimize(Analyze(source, AnalysisOptions{}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(log.size()));
}
BENCHMARK(BM_AllReports)->Arg(10'000)->Arg(200'000)->Unit(benchmark::kMillisecond);

void BM_DetectFormat(benchmark::State& state) {
  const std::vector<std::uint8_t> log = GeneratedLog(1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(DetectFormat(log, log.size(), DetectionHints{}));
  }
}
BENCHMARK(BM_DetectFormat);

void BM_Generate(benchmark::State& state) {
  GeneratorConfig cfg;
  cfg.profile = BuiltinProfile("internet");
  cfg.n_records = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    std::ostringstream sink;
    benchmark::DoNotOptimize(GenerateLog(cfg, sink));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace acctlens

#include <benchmark/benchmark.h>

#include "paprsim/config.hpp"
#include "paprsim/experiment.hpp"

using namespace paprsim;

namespace {

const TransmitChain& chain() {
  static const TransmitChain c = [] {
    SimulationConfig cfg;
    cfg.seed = 1;
    return TransmitChain(cfg);
  }();
  return c;
}

constexpr std::size_t kTrials = 64;

void BM_PaprSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(run_papr_serial(chain(), ModScheme::qpsk, kTrials, 7));
  st.SetItemsProcessed(st.iterations() * kTrials);
}

void BM_PaprParallel(benchmark::State& st) {
  const int workers = static_cast<int>(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(run_papr_parallel(chain(), ModScheme::qpsk, kTrials, 7, workers));
  st.SetItemsProcessed(st.iterations() * kTrials);
}

void BM_BerSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(run_ber_serial(chain(), ModScheme::qpsk, kTrials, 7));
  st.SetItemsProcessed(st.iterations() * kTrials);
}

void BM_BerParallel(benchmark::State& st) {
  const int workers = static_cast<int>(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(run_ber_parallel(chain(), ModScheme::qpsk, kTrials, 7, workers));
  st.SetItemsProcessed(st.iterations() * kTrials);
}

}  // namespace

BENCHMARK(BM_PaprSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PaprParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BerSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BerParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

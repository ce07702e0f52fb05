#include <benchmark/benchmark.h>

#include "heunpc/pcf.hpp"

using namespace heunpc;

static void BM_PcfD(benchmark::State& state) {
  Cplx nu(0.5, 0.3), x(1.2, -0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcf_d({nu}, x).value);
  }
}
BENCHMARK(BM_PcfD);

static void BM_PcfDJet(benchmark::State& state) {
  Cplx nu(0.5, 0.3), x(1.2, -0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcf_d_jet({nu}, x).d2);
  }
}
BENCHMARK(BM_PcfDJet);

static void BM_PcfDScaledDeep(benchmark::State& state) {
  Cplx nu(-double(state.range(0)), 0.0), x(1.0, 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcf_d_scaled(nu, x).value.e);
  }
}
BENCHMARK(BM_PcfDScaledDeep)->Arg(50)->Arg(200)->Arg(800);

#include <benchmark/benchmark.h>

#include "heunpc/series.hpp"

using namespace heunpc;

static void BM_SeriesEval(benchmark::State& state) {
  GeneralParams p{{-2, 0}, {0.6, 0.2}, {0.3, -0.4}, {1.1, 0.5}};
  SeriesSolution sol = make_series_solution(p, SeriesVariant::Base);
  Cplx z(-4.5, 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_series(sol, z).value);
  }
}
BENCHMARK(BM_SeriesEval);

static void BM_CoeffStream(benchmark::State& state) {
  GeneralParams p{{-1.3, 0.0}, {0.4, 0.0}, {0.2, 0.1}, {0.9, 0.0}};
  for (auto _ : state) {
    CoeffStream s(p, SeriesVariant::Base);
    ScaledComplex last;
    for (int n = 0; n < int(state.range(0)); ++n) last = s.next();
    benchmark::DoNotOptimize(last.e);
  }
}
BENCHMARK(BM_CoeffStream)->Arg(100)->Arg(400);

static void BM_GlueConstruct(benchmark::State& state) {
  GeneralParams p{{-1, 0}, {-3.4, 0}, {0.37, 0.21}, {0.8, -0.3}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(glue_entire(p).C0);
  }
}
BENCHMARK(BM_GlueConstruct);

#include <benchmark/benchmark.h>

#include "heunpc/spectra.hpp"

using namespace heunpc;

static void BM_Eigenvalues(benchmark::State& state) {
  int N = int(state.range(0));
  GeneralParams p{{0.4, 0.1}, {-double(N), 0.0}, {0, 0}, {1.3, 0.2}};
  auto sys = build_tridiagonal(p, N);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalues_d(sys).size());
  }
}
BENCHMARK(BM_Eigenvalues)->Arg(2)->Arg(6)->Arg(10);

static void BM_SolveFamily(benchmark::State& state) {
  int N = int(state.range(0));
  GeneralParams p{{0.4, 0.1}, {-double(N), 0.0}, {0, 0}, {1.3, 0.2}};
  CanonicalParams cp = general_to_canonical(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_family(CaseTag::I, cp, N).size());
  }
}
BENCHMARK(BM_SolveFamily)->Arg(2)->Arg(6);

static void BM_ResidualEval(benchmark::State& state) {
  GeneralParams p{{0.4, 0.1}, {-4.0, 0.0}, {0, 0}, {1.3, 0.2}};
  CanonicalParams cp = general_to_canonical(p);
  auto fam = solve_family(CaseTag::I, cp, 4);
  CanonicalParams pr = cp;
  pr.delta = fam[0].delta;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bhe_residual(fam[0], pr, Cplx(0.7, 0.3)));
  }
}
BENCHMARK(BM_ResidualEval);

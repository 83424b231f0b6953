#include <benchmark/benchmark.h>

#include "subdivqi/weights.hpp"

using namespace subdivqi;

static void BM_QuadSystemAssembly(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Mat A = local_A(SchemeId::catmull_clark(), n);
    benchmark::DoNotOptimize(A.data());
  }
}
BENCHMARK(BM_QuadSystemAssembly)->Arg(4)->Arg(8)->Arg(12);

static void BM_TriSystemAssembly(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Mat A = local_A(SchemeId::loop(), n);
    benchmark::DoNotOptimize(A.data());
  }
}
BENCHMARK(BM_TriSystemAssembly)->Arg(6)->Arg(12);

static void BM_OracleAssembly(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Mat A = oracle_A(SchemeId::loop(), n);
    benchmark::DoNotOptimize(A.data());
  }
}
BENCHMARK(BM_OracleAssembly)->Arg(6);

static void BM_RowSolve(benchmark::State& state) {
  Mat A = local_A(SchemeId::catmull_clark(), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Eigen::VectorXd w = solve_row(A, 0);
    benchmark::DoNotOptimize(w.data());
  }
}
BENCHMARK(BM_RowSolve)->Arg(4)->Arg(12);

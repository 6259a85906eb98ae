#include <benchmark/benchmark.h>

#include "sps/fusion.hpp"
#include "sps/kk.hpp"
#include "sps/linalg.hpp"
#include "sps/sequences.hpp"
#include "sps/system.hpp"

namespace {

void BM_DimSequence(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sps::dim_sequence(2, degree));
  }
}
BENCHMARK(BM_DimSequence)->Arg(40)->Arg(500);

void BM_Kron(benchmark::State& state) {
  const sps::Index d = state.range(0);
  const sps::Mat a = sps::Mat::Random(d, d);
  const sps::Mat b = sps::Mat::Random(d, d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sps::kron(a, b));
  }
}
BENCHMARK(BM_Kron)->Arg(8)->Arg(32);

void BM_ApplyKronLeft(benchmark::State& state) {
  const sps::Index d = state.range(0);
  const sps::Mat a = sps::Mat::Random(d, d);
  const sps::Mat x = sps::Mat::Random(d * d, d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sps::apply_kron_left(d, a, x));
  }
}
BENCHMARK(BM_ApplyKronLeft)->Arg(16)->Arg(64);

void BM_BuildSystem(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int top = static_cast<int>(state.range(1));
  for (auto _ : state) {
    sps::SubproductSystem sys = sps::build_system(n, top);
    benchmark::DoNotOptimize(sys.dim(top));
  }
}
BENCHMARK(BM_BuildSystem)->Args({1, 8})->Args({2, 4})->Args({3, 3});

void BM_FusionUnitary(benchmark::State& state) {
  sps::SubproductSystem sys = sps::build_system(2, 4);
  sps::FusionMaps fusion(sys);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fusion.fusion_unitary(2, 1));
  }
}
BENCHMARK(BM_FusionUnitary);

void BM_StraddleProjector(benchmark::State& state) {
  sps::SubproductSystem sys = sps::build_system(2, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sys.straddle_projector(2, 2));
  }
}
BENCHMARK(BM_StraddleProjector);

void BM_SmithForm(benchmark::State& state) {
  const sps::IntMat a = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sps::smith_normal_form(a));
  }
}
BENCHMARK(BM_SmithForm);

}  // namespace

BENCHMARK_MAIN();

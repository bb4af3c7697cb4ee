#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "nlft/factorize.hpp"
#include "nlft/inverse.hpp"
#include "nlft/io.hpp"
#include "nlft/opuc.hpp"
#include "nlft/pair.hpp"
#include "nlft/rh.hpp"
#include "nlft/transform.hpp"

namespace {

void BM_ForwardTransform(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  const auto F = nlft::random_sequence(-count / 2, count, 0.8, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlft::nlft_finite(F));
  }
  state.SetComplexityN(count);
}
BENCHMARK(BM_ForwardTransform)->Range(8, 512)->Complexity();

void BM_LayerStrip(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  const auto F = nlft::random_sequence(0, count, 0.8, 43);
  const auto p = nlft::nlft_finite(F);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlft::layer_strip_finite(p));
  }
  state.SetComplexityN(count);
}
BENCHMARK(BM_LayerStrip)->Range(8, 256)->Complexity();

void BM_SpectralFactorization(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  const auto F = nlft::random_sequence(0, count, 0.8, 44);
  const auto b = nlft::nlft_finite(F).as_laurent().b;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlft::a_from_b_laurent(b));
  }
  state.SetComplexityN(count);
}
BENCHMARK(BM_SpectralFactorization)->Range(8, 128)->Complexity();

void BM_ContractionSplit(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  const auto F = nlft::random_sequence(-count / 2, count, 0.8, 45);
  const auto p = nlft::nlft_finite(F);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlft::rh_contraction_bounded(p));
  }
  state.SetComplexityN(count);
}
BENCHMARK(BM_ContractionSplit)->Range(8, 64)->Complexity();

void BM_PlancherelCheck(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  const auto F = nlft::random_sequence(0, count, 0.8, 46);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlft::plancherel_check(F));
  }
}
BENCHMARK(BM_PlancherelCheck)->Range(8, 128);

void BM_SzegoLeastSquares(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const auto F = nlft::random_sequence(1, 8, 0.55, 47);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlft::szego_check(F, degree));
  }
}
BENCHMARK(BM_SzegoLeastSquares)->Arg(8)->Arg(32)->Arg(128);

void BM_HessenbergOracle(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto F = nlft::random_sequence(1, N, 0.6, 48);
  const auto w = nlft::measure_density_finite(F);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlft::gram_schmidt_oracle(w, N));
  }
}
BENCHMARK(BM_HessenbergOracle)->Arg(4)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "hotk/tensor.hpp"

using namespace hotk;

static void BM_Hadamard(benchmark::State& state) {
  auto a = DenseTensor::zeros({32, 32, 16});
  auto b = DenseTensor::zeros({32, 32, 16});
  for (auto _ : state) {
    auto c = hadamard(a, b);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_Hadamard);

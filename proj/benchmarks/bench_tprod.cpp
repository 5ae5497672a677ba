#include <benchmark/benchmark.h>

#include <random>

#include "hotk/tensor.hpp"
#include "hotk/tprod.hpp"
#include "hotk/transform.hpp"

using namespace hotk;

namespace {

DenseTensor filled(const Dims& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseTensor t = DenseTensor::zeros(dims);
  for (double& v : t.rdata()) v = u(rng);
  return t;
}

void BM_Tprod(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto l = LinearTransform::dft({n, n});
  auto a = filled({16, 8, n, n}, 1);
  auto x = filled({8, 16, n, n}, 2);
  for (auto _ : state) {
    auto c = tprod(a, x, l);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_Tprod)->Arg(4)->Arg(8)->Arg(16);

void BM_ClassicalTprod(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto a = filled({16, 8, n, n}, 1);
  auto x = filled({8, 16, n, n}, 2);
  for (auto _ : state) {
    auto c = classical_tprod(a, x);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_ClassicalTprod)->Arg(4)->Arg(8);

void BM_Tsvd(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto l = LinearTransform::dft({n, n});
  auto x = filled({8, 8, n, n}, 1);
  for (auto _ : state) {
    auto f = tsvd(x, l);
    benchmark::DoNotOptimize(f.s);
  }
}
BENCHMARK(BM_Tsvd)->Arg(4)->Arg(8);

void BM_Tsvt(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto l = LinearTransform::dft({n, n});
  auto x = filled({8, 8, n, n}, 1);
  for (auto _ : state) {
    auto y = tsvt(x, 0.1, l);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_Tsvt)->Arg(4)->Arg(8);

}  // namespace

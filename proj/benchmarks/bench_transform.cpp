#include <benchmark/benchmark.h>

#include <random>

#include "hotk/tensor.hpp"
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

void BM_ForwardDft(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto l = LinearTransform::dft({n, n});
  auto x = filled({16, 16, n, n}, 1);
  for (auto _ : state) {
    auto y = l.forward(x);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_ForwardDft)->Arg(4)->Arg(8)->Arg(16);

void BM_ForwardDct(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto l = LinearTransform::dct({n, n});
  auto x = filled({16, 16, n, n}, 1);
  for (auto _ : state) {
    auto y = l.forward(x);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_ForwardDct)->Arg(4)->Arg(8)->Arg(16);

void BM_RoundTripDft(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto l = LinearTransform::dft({n, n});
  auto x = filled({16, 16, n, n}, 1);
  for (auto _ : state) {
    auto y = l.inverse(l.forward(x), Realify::Soft);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_RoundTripDft)->Arg(4)->Arg(8);

}  // namespace

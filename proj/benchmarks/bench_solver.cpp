#include <benchmark/benchmark.h>

#include <random>

#include "hotk/experiments.hpp"
#include "hotk/prox.hpp"
#include "hotk/solver.hpp"
#include "hotk/transform.hpp"

using namespace hotk;

namespace {

void BM_ProxL1p(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseTensor z = DenseTensor::zeros({64, 64, 4});
  for (double& v : z.rdata()) v = u(rng);
  ProxParams prm{p, 1e-3};
  for (auto _ : state) {
    auto x = prox_l1p(z, prm);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_ProxL1p)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_SolveSparse(benchmark::State& state) {
  SyntheticSpec spec;
  spec.a_dims = {20, 2, 8, 8};
  spec.x_dims = {2, 8, 8, 8};
  spec.density = 0.8;
  spec.seed = 0;
  RecoveryProblem prob = gen_sparse_problem(spec, LinearTransform::dft({8, 8}));
  SolverConfig cfg;
  cfg.lambda = 1e-3;
  cfg.p = 2;
  cfg.blocks = 3;
  cfg.max_iters = static_cast<std::size_t>(state.range(0));
  cfg.tol = 0.0;
  cfg.trace_every = cfg.max_iters;
  for (auto _ : state) {
    auto res = solve(prob, cfg);
    benchmark::DoNotOptimize(res.x);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SolveSparse)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SolveNuclear(benchmark::State& state) {
  SyntheticSpec spec;
  spec.a_dims = {20, 2, 8, 8};
  spec.x_dims = {2, 8, 8, 8};
  spec.rank = 1;
  spec.seed = 0;
  RecoveryProblem prob = gen_lowrank_problem(spec, LinearTransform::dft({8, 8}));
  SolverConfig cfg;
  cfg.lambda = 1e-3;
  cfg.p = 2;
  cfg.max_iters = static_cast<std::size_t>(state.range(0));
  cfg.tol = 0.0;
  cfg.trace_every = cfg.max_iters;
  for (auto _ : state) {
    auto res = solve(prob, cfg);
    benchmark::DoNotOptimize(res.x);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SolveNuclear)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hotk/prox.hpp"
#include "hotk/tensor.hpp"
#include "hotk/transform.hpp"

namespace hotk {

enum class SelectionRule { Cyclic, Random };
enum class PartitionRule { Contiguous, Shuffled };
enum class MomentumRule { Nesterov, IterRatio };

// Weighting of the random block draw.  Auto uses squared row norms when every
// block is a single row and uniform weights otherwise.
enum class BlockWeights { Auto, Uniform, NormProportional };

// Linear system a * x = b under the given transform, with an optional ground
// truth for error reporting.  a: n1 x n2 x higher, b: n1 x l x higher,
// solution: n2 x l x higher.
struct RecoveryProblem {
  DenseTensor a;
  DenseTensor b;
  LinearTransform transform;
  Regularizer mode = Regularizer::Elementwise;
  std::optional<DenseTensor> ground_truth;
};

struct SolverConfig {
  double t = 1.0;
  double lambda = 0.0;
  int p = 1;
  std::size_t max_iters = 1000;
  double tol = 1e-8;
  SelectionRule selection = SelectionRule::Cyclic;
  std::size_t blocks = 0;  // 0 selects one block per row
  PartitionRule partition = PartitionRule::Contiguous;
  BlockWeights weights = BlockWeights::Auto;
  bool accelerated = false;
  MomentumRule momentum = MomentumRule::Nesterov;
  NuclearN nuclear_n = NuclearN::CoreEntries;
  std::uint64_t seed = 0;
  std::size_t trace_every = 1;
};

// One recorded solver state.  Optional fields stay empty when the quantity is
// undefined there: re and bregman need a ground truth, rel_change and block
// need a completed step.
struct TraceRow {
  std::size_t iter = 0;
  std::optional<double> re;
  std::optional<double> rel_change;
  double objective = 0.0;
  std::optional<double> bregman;
  double elapsed_ms = 0.0;
  std::optional<std::size_t> block;
};

struct SolveResult {
  DenseTensor x;
  DenseTensor z;
  std::vector<TraceRow> trace;
  std::vector<std::string> warnings;
  std::size_t iterations = 0;
  bool converged = false;
};

// Splits row indices 0..n1-1 into m blocks with sizes differing by at most
// one.  The shuffled rule permutes the rows first (seeded), then chunks; each
// block is returned sorted ascending.
std::vector<std::vector<std::size_t>> partition_rows(std::size_t n1, std::size_t m,
                                                     PartitionRule rule, std::uint64_t seed = 0);

// Index of the block to use at step k.  Cyclic ignores the generator and
// returns k mod m; random draws proportionally to the given weights.
std::size_t select_block(std::size_t k, std::size_t m, SelectionRule rule,
                         const std::vector<double>& weights, std::mt19937_64& rng);

// Single dual update z + t * a_slab^* * (b_slab - a_slab * x) / ||a_slab||_F^2
// written with plain products; the solve loop computes the same update against
// cached transform-domain slabs.
DenseTensor kaczmarz_step(const DenseTensor& z, const DenseTensor& x, const DenseTensor& a_slab,
                          const DenseTensor& b_slab, double t, const LinearTransform& l);

SolveResult solve(const RecoveryProblem& problem, const SolverConfig& config);

}  // namespace hotk

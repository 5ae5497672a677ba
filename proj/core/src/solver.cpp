#include "hotk/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "hotk/tprod.hpp"

namespace hotk {

namespace {

double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa draw, identical across standard libraries
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_problem(const RecoveryProblem& pb) {
  const DenseTensor& a = pb.a;
  const DenseTensor& b = pb.b;
  if (a.order() != b.order()) throw ShapeError("solve: A and B orders differ");
  if (a.dim(0) != b.dim(0)) throw ShapeError("solve: A and B row counts differ");
  for (std::size_t k = 2; k < a.order(); ++k)
    if (a.dim(k) != b.dim(k)) throw ShapeError("solve: A and B higher dims differ");
  if (!pb.transform.compatible_with(a))
    throw ShapeError("solve: transform does not match the operands");
  if (pb.ground_truth) {
    const DenseTensor& x = *pb.ground_truth;
    if (x.order() != a.order() || x.dim(0) != a.dim(1) || x.dim(1) != b.dim(1))
      throw ShapeError("solve: ground truth shape does not match A and B");
    for (std::size_t k = 2; k < a.order(); ++k)
      if (x.dim(k) != a.dim(k)) throw ShapeError("solve: ground truth higher dims differ");
  }
}

std::vector<double> row_sq_norms(const DenseTensor& a) {
  const std::size_t n1 = a.dim(0);
  std::vector<double> out(n1, 0.0);
  if (a.is_complex()) {
    auto d = a.cdata();
    for (std::size_t i = 0; i < d.size(); ++i) out[i % n1] += std::norm(d[i]);
  } else {
    auto d = a.rdata();
    for (std::size_t i = 0; i < d.size(); ++i) out[i % n1] += d[i] * d[i];
  }
  return out;
}

DenseTensor facewise_adjoint(const DenseTensor& a) {
  Dims dims = a.dims();
  std::swap(dims[0], dims[1]);
  DenseTensor out = DenseTensor::zeros(dims, a.is_complex());
  const std::size_t j_count = slice_count(a);
  if (a.is_complex()) {
    for (std::size_t j = 0; j < j_count; ++j) slice_complex(out, j) = slice_complex(a, j).adjoint();
  } else {
    for (std::size_t j = 0; j < j_count; ++j) slice_real(out, j) = slice_real(a, j).transpose();
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> partition_rows(std::size_t n1, std::size_t m,
                                                     PartitionRule rule, std::uint64_t seed) {
  if (m == 0 || m > n1)
    throw ValueError("partition_rows: block count must be in 1.." + std::to_string(n1));
  std::vector<std::size_t> idx(n1);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (rule == PartitionRule::Shuffled) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = n1; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(idx[i - 1], idx[j]);
    }
  }
  std::vector<std::vector<std::size_t>> blocks(m);
  const std::size_t q = n1 / m, r = n1 % m;
  std::size_t pos = 0;
  for (std::size_t bi = 0; bi < m; ++bi) {
    const std::size_t len = q + (bi < r ? 1 : 0);
    blocks[bi].assign(idx.begin() + static_cast<std::ptrdiff_t>(pos),
                      idx.begin() + static_cast<std::ptrdiff_t>(pos + len));
    std::sort(blocks[bi].begin(), blocks[bi].end());
    pos += len;
  }
  return blocks;
}

std::size_t select_block(std::size_t k, std::size_t m, SelectionRule rule,
                         const std::vector<double>& weights, std::mt19937_64& rng) {
  if (m == 0) throw ValueError("select_block: no blocks");
  if (rule == SelectionRule::Cyclic) return k % m;
  if (weights.size() != m) throw ValueError("select_block: weight count does not match blocks");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValueError("select_block: weights must be nonnegative");
    total += w;
  }
  if (total <= 0.0) throw ValueError("select_block: all weights are zero");
  const double r = uniform01(rng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    acc += weights[i];
    if (r < acc) return i;
  }
  for (std::size_t i = m; i-- > 0;)
    if (weights[i] > 0.0) return i;
  return m - 1;
}

DenseTensor kaczmarz_step(const DenseTensor& z, const DenseTensor& x, const DenseTensor& a_slab,
                          const DenseTensor& b_slab, double t, const LinearTransform& l) {
  const double denom2 = norm_fro(a_slab);
  if (denom2 == 0.0) throw ValueError("kaczmarz_step: slab has zero norm");
  DenseTensor resid = sub(b_slab, tprod(a_slab, x, l));
  DenseTensor dir = tprod(conj_transpose(a_slab, l), resid, l);
  DenseTensor out = z;
  if (out.is_complex() && !dir.is_complex()) dir = dir.to_complex();
  if (!out.is_complex() && dir.is_complex()) out = out.to_complex();
  axpy_inplace(out, t / (denom2 * denom2), dir);
  return out;
}

SolveResult solve(const RecoveryProblem& pb, const SolverConfig& cfg) {
  check_problem(pb);
  if (!(cfg.t > 0.0)) throw ValueError("solve: step size must be positive");
  if (cfg.p < 1 || cfg.p > 4) throw ValueError("solve: p must be in 1..4");
  if (!(cfg.lambda >= 0.0)) throw ValueError("solve: lambda must be nonnegative");
  if (!(cfg.tol >= 0.0)) throw ValueError("solve: tol must be nonnegative");
  if (cfg.trace_every == 0) throw ValueError("solve: trace_every must be positive");

  const std::size_t n1 = pb.a.dim(0);
  const std::size_t m = cfg.blocks == 0 ? n1 : cfg.blocks;
  if (m > n1) throw ValueError("solve: block count exceeds row count");

  SolveResult res;
  const double rho = pb.transform.rho();
  if (cfg.t >= 2.0 / rho)
    res.warnings.push_back("step size t=" + std::to_string(cfg.t) +
                           " is not below 2/rho=" + std::to_string(2.0 / rho) +
                           "; the descent guarantee does not apply");

  const std::vector<double> row_norms2 = row_sq_norms(pb.a);
  for (std::size_t i = 0; i < n1; ++i)
    if (row_norms2[i] == 0.0)
      throw ValueError("solve: row " + std::to_string(i) + " of A has zero norm");

  const auto blocks = partition_rows(n1, m, cfg.partition, cfg.seed);
  const bool singleton = std::all_of(blocks.begin(), blocks.end(),
                                     [](const auto& b) { return b.size() == 1; });
  std::vector<double> weights(m, 1.0);
  const bool norm_weighted =
      cfg.weights == BlockWeights::NormProportional ||
      (cfg.weights == BlockWeights::Auto && singleton);
  std::vector<double> block_norms2(m, 0.0);
  for (std::size_t bi = 0; bi < m; ++bi)
    for (std::size_t row : blocks[bi]) block_norms2[bi] += row_norms2[row];
  if (norm_weighted) weights = block_norms2;

  const LinearTransform& l = pb.transform;
  const bool real_problem =
      !pb.a.is_complex() && !pb.b.is_complex() && l.real_preserving();
  const Objective obj{pb.mode, cfg.p, cfg.lambda, cfg.nuclear_n};

  // transform-domain slabs, fixed for the whole run
  DenseTensor af = l.forward(pb.a);
  DenseTensor bf = l.forward(pb.b);
  std::vector<DenseTensor> a_slabs, at_slabs, b_slabs;
  a_slabs.reserve(m);
  at_slabs.reserve(m);
  b_slabs.reserve(m);
  for (std::size_t bi = 0; bi < m; ++bi) {
    a_slabs.push_back(horizontal_slab(af, std::span<const std::size_t>(blocks[bi])));
    at_slabs.push_back(facewise_adjoint(a_slabs.back()));
    b_slabs.push_back(horizontal_slab(bf, std::span<const std::size_t>(blocks[bi])));
  }

  Dims x_dims{pb.a.dim(1), pb.b.dim(1)};
  for (std::size_t k = 2; k < pb.a.order(); ++k) x_dims.push_back(pb.a.dim(k));

  std::mt19937_64 rng(cfg.seed);
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&t_start] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
        .count();
  };

  DenseTensor z = DenseTensor::zeros(x_dims, !real_problem);
  DenseTensor zhat_prev = z;
  double gamma = 1.0;
  DenseTensor x = gradient_conjugate(z, obj, l);
  DenseTensor x_prev = x;

  const DenseTensor* truth = pb.ground_truth ? &*pb.ground_truth : nullptr;
  const double truth_norm = truth ? norm_fro(*truth) : 0.0;

  std::size_t iter = 0;
  std::optional<std::size_t> last_block;
  std::optional<double> last_rel_change;
  bool done = false;
  std::size_t last_recorded = static_cast<std::size_t>(-1);

  auto record = [&](bool force) {
    if (!force && iter % cfg.trace_every != 0) return;
    if (last_recorded == iter) return;
    TraceRow row;
    row.iter = iter;
    row.rel_change = last_rel_change;
    row.block = last_block;
    row.objective = objective_value(x, obj, l);
    if (truth && truth_norm > 0.0) {
      row.re = norm_fro(sub(x, *truth)) / truth_norm;
      row.bregman = bregman_distance(*truth, x, z, obj, l);
    }
    row.elapsed_ms = elapsed_ms();
    res.trace.push_back(row);
    last_recorded = iter;
  };

  record(true);
  while (iter < cfg.max_iters && !done) {
    const std::size_t bi = select_block(iter, m, cfg.selection, weights, rng);

    DenseTensor xf = l.forward(x);
    DenseTensor residf = sub(b_slabs[bi], facewise(a_slabs[bi], xf));
    DenseTensor dirf = facewise(at_slabs[bi], residf);
    DenseTensor dir = l.inverse(dirf);
    if (real_problem && dir.is_complex()) dir = real_part(dir);
    if (!real_problem && !dir.is_complex()) dir = dir.to_complex();

    DenseTensor zhat_next = z;
    axpy_inplace(zhat_next, cfg.t / block_norms2[bi], dir);
    if (cfg.accelerated) {
      double eta;
      if (cfg.momentum == MomentumRule::Nesterov) {
        const double gamma_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * gamma * gamma));
        eta = (1.0 - gamma) / gamma_next;
        gamma = gamma_next;
      } else {
        eta = -static_cast<double>(iter) / (static_cast<double>(iter) + 3.0);
      }
      DenseTensor znew = scale(zhat_next, 1.0 - eta);
      axpy_inplace(znew, eta, zhat_prev);
      z = std::move(znew);
      zhat_prev = std::move(zhat_next);
    } else {
      z = std::move(zhat_next);
    }

    x = gradient_conjugate(z, obj, l);
    ++iter;
    last_block = bi;

    const double prev_norm = norm_fro(x_prev);
    const double diff_norm = norm_fro(sub(x, x_prev));
    if (!std::isfinite(diff_norm) || !std::isfinite(norm_fro(z)))
      throw NumericError("solve: diverged at iteration " + std::to_string(iter));
    if (prev_norm > 0.0) {
      last_rel_change = diff_norm / prev_norm;
      if (*last_rel_change < cfg.tol) {
        res.converged = true;
        done = true;
      }
    } else {
      last_rel_change.reset();
    }
    x_prev = x;
    record(done || iter == cfg.max_iters);
  }

  res.x = std::move(x);
  res.z = std::move(z);
  res.iterations = iter;
  return res;
}

}  // namespace hotk

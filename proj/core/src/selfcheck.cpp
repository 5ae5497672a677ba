#include "hotk/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "hotk/experiments.hpp"
#include "hotk/prox.hpp"
#include "hotk/solver.hpp"
#include "hotk/tensor.hpp"
#include "hotk/tprod.hpp"
#include "hotk/transform.hpp"

namespace hotk {

namespace {

struct Suite {
  std::vector<CheckResult> results;
  std::mt19937_64 rng;
  std::size_t draws;       // random instances per property
  std::size_t solve_iters; // iteration budget for the solver checks

  void report(const char* group, const char* name, bool ok, double measured, double tol) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "measured %.3g against tolerance %.3g", measured, tol);
    results.push_back({group, name, ok, buf});
  }

  void report_bool(const char* group, const char* name, bool ok, const char* detail) {
    results.push_back({group, name, ok, detail});
  }

  DenseTensor random_tensor(const Dims& dims, bool complex = false) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseTensor t = DenseTensor::zeros(dims, complex);
    if (complex) {
      for (Complex& v : t.cdata()) v = Complex(u(rng), u(rng));
    } else {
      for (double& v : t.rdata()) v = u(rng);
    }
    return t;
  }
};

double rel_err(const DenseTensor& got, const DenseTensor& want) {
  const double scale = norm_fro(want);
  const double diff = norm_fro(sub(got, want));
  return scale == 0.0 ? diff : diff / scale;
}

std::vector<LinearTransform> built_ins(const Dims& mode_dims) {
  return {LinearTransform::identity(mode_dims), LinearTransform::dft(mode_dims),
          LinearTransform::dft_unitary(mode_dims), LinearTransform::dct(mode_dims)};
}

void check_transforms(Suite& s) {
  double worst_round = 0.0;
  double worst_rho = 0.0;
  for (std::size_t d = 0; d < s.draws; ++d) {
    for (const LinearTransform& l : built_ins({3, 2})) {
      for (bool complex : {false, true}) {
        DenseTensor x = s.random_tensor({4, 3, 3, 2}, complex);
        worst_round = std::max(worst_round, rel_err(l.inverse(l.forward(x)), x));
      }
      worst_rho = std::max(worst_rho, std::abs(l.verify_rho() - l.rho()));
    }
  }
  s.report("transforms", "forward-inverse round trip", worst_round < 1e-10, worst_round, 1e-10);
  s.report("transforms", "scaled unitarity constant", worst_rho < 1e-10, worst_rho, 1e-10);
}

void check_tprod(Suite& s) {
  LinearTransform dft = LinearTransform::dft({3, 2});
  double worst_classical = 0.0;
  double worst_adjoint = 0.0;
  double worst_bound = 0.0;
  for (std::size_t d = 0; d < s.draws; ++d) {
    DenseTensor a = s.random_tensor({4, 3, 3, 2});
    DenseTensor x = s.random_tensor({3, 2, 3, 2});
    worst_classical =
        std::max(worst_classical, rel_err(tprod(a, x, dft), classical_tprod(a, x)));
    for (const LinearTransform& l : built_ins({3, 2})) {
      DenseTensor ax = tprod(a, x, l);
      DenseTensor y = s.random_tensor({4, 2, 3, 2});
      DenseTensor aty = tprod(conj_transpose(a, l), y, l);
      const double lhs = inner(ax, y).real();
      const double rhs = inner(x, aty).real();
      const double denom = std::max({1.0, std::abs(lhs), std::abs(rhs)});
      worst_adjoint = std::max(worst_adjoint, std::abs(lhs - rhs) / denom);
      const double bound = std::sqrt(l.rho()) * norm_fro(a) * norm_fro(x);
      worst_bound = std::max(worst_bound, (norm_fro(ax) - bound) / bound);
    }
  }
  s.report("products", "transform path matches block-circulant path", worst_classical < 1e-8,
           worst_classical, 1e-8);
  s.report("products", "conjugate transpose is the product adjoint", worst_adjoint < 1e-9,
           worst_adjoint, 1e-9);
  s.report("products", "product norm bound", worst_bound <= 1e-12, worst_bound, 1e-12);
}

void check_tsvd(Suite& s) {
  double worst_recon = 0.0;
  double worst_orth = 0.0;
  double worst_fixed = 0.0;
  for (std::size_t d = 0; d < s.draws; ++d) {
    for (const LinearTransform& l : built_ins({3})) {
      DenseTensor x = s.random_tensor({4, 3, 3}, !l.is_real() && d % 2 == 1);
      TsvdFactors f = tsvd(x, l);
      DenseTensor recon = tprod(tprod(f.u, f.s, l), conj_transpose(f.v, l), l);
      worst_recon = std::max(worst_recon, rel_err(recon, x));
      DenseTensor eye = identity_tensor(4, {3}, l);
      worst_orth =
          std::max(worst_orth, rel_err(tprod(conj_transpose(f.u, l), f.u, l), eye));
      worst_fixed = std::max(worst_fixed, rel_err(tsvt(x, 0.0, l), x));
    }
  }
  s.report("tsvd", "factor product reconstructs the input", worst_recon < 1e-8, worst_recon, 1e-8);
  s.report("tsvd", "left factor is orthogonal", worst_orth < 1e-8, worst_orth, 1e-8);
  s.report("tsvd", "zero threshold is the identity", worst_fixed < 1e-10, worst_fixed, 1e-10);
}

void check_prox(Suite& s) {
  std::uniform_real_distribution<double> mag(0.0, 10.0);
  double worst_resid = 0.0;
  double worst_expansion = 0.0;
  bool identity_ok = true;
  for (std::size_t d = 0; d < s.draws * 10; ++d) {
    for (int p = 2; p <= 4; ++p) {
      const double z1 = mag(s.rng);
      const double lambda = mag(s.rng) * 0.1;
      const std::size_t n = 1 + (s.rng() % 8);
      const double g = shrinkage_scale(z1, p, lambda, n);
      const double resid = std::abs(p * static_cast<double>(n) * lambda * std::pow(g, p - 1) +
                                    g - z1);
      worst_resid = std::max(worst_resid, resid / (1.0 + z1));
    }
  }
  for (std::size_t d = 0; d < s.draws; ++d) {
    DenseTensor a = s.random_tensor({3, 2, 2});
    DenseTensor b = s.random_tensor({3, 2, 2});
    ProxParams prm{1, 0.3};
    const double num = norm_fro(sub(prox_l1p(a, prm), prox_l1p(b, prm)));
    const double den = norm_fro(sub(a, b));
    worst_expansion = std::max(worst_expansion, num - den);
    ProxParams zero{3, 0.0};
    DenseTensor same = prox_l1p(a, zero);
    identity_ok = identity_ok && norm_fro(sub(same, a)) == 0.0;
  }
  s.report("prox", "threshold scale solves its equation", worst_resid < 1e-10, worst_resid, 1e-10);
  s.report("prox", "soft thresholding is nonexpansive", worst_expansion <= 1e-12, worst_expansion,
           1e-12);
  s.report_bool("prox", "zero weight is the exact identity", identity_ok,
                identity_ok ? "all draws unchanged bitwise" : "an entry changed");
}

void check_solver(Suite& s) {
  SyntheticSpec spec;
  spec.a_dims = {8, 2, 4, 4};
  spec.x_dims = {2, 4, 4, 4};
  spec.density = 0.8;
  spec.seed = static_cast<std::uint64_t>(s.rng());
  LinearTransform l = LinearTransform::dft({4, 4});
  RecoveryProblem prob = gen_sparse_problem(spec, l);

  SolverConfig cfg;
  cfg.t = 1.0;
  cfg.lambda = 1e-3;
  cfg.p = 2;
  cfg.blocks = 3;
  cfg.max_iters = s.solve_iters;
  cfg.tol = 0.0;
  cfg.trace_every = 50;
  SolveResult run1 = solve(prob, cfg);
  SolveResult run2 = solve(prob, cfg);

  bool same = run1.trace.size() == run2.trace.size() &&
              norm_fro(sub(run1.x, run2.x)) == 0.0 && norm_fro(sub(run1.z, run2.z)) == 0.0;
  for (std::size_t i = 0; same && i < run1.trace.size(); ++i) {
    same = run1.trace[i].objective == run2.trace[i].objective &&
           run1.trace[i].re == run2.trace[i].re;
  }
  s.report_bool("solver", "repeated runs are bitwise identical", same,
                same ? "iterates and traces agree" : "iterates or traces differ");

  const double re = metric_re(run1.x, *prob.ground_truth);
  s.report("solver", "consistent sparse problem is recovered", re < 1e-2, re, 1e-2);

  const double drift = norm_fro(sub(gradient_conjugate(run1.z, {prob.mode, cfg.p, cfg.lambda,
                                                               cfg.nuclear_n}, l),
                                    run1.x));
  s.report("solver", "primal iterate matches the dual map", drift == 0.0, drift, 0.0);
}

void check_experiments(Suite& s) {
  LinearTransform id2 = LinearTransform::identity({2});
  double worst_conv = 0.0;
  for (std::size_t d = 0; d < std::max<std::size_t>(1, s.draws / 2); ++d) {
    DenseTensor h = s.random_tensor({3, 2});
    DenseTensor x = s.random_tensor({4, 2, 4, 2});
    DenseTensor a = build_conv_operator(Psf{h}, x.dims());
    DenseTensor xp = zero_pad_mode(x, 2, x.dim(2) + h.dim(0) - 1);
    LinearTransform dft = LinearTransform::dft(higher_mode_dims(a));
    worst_conv = std::max(worst_conv, rel_err(tprod(a, xp, dft), classical_tprod(a, xp)));
  }
  s.report("experiments", "convolution operator paths agree", worst_conv < 1e-8, worst_conv, 1e-8);

  DenseTensor op = build_destripe_operator({6, 4, 2}, 3, 0.01);
  double off_diag = 0.0;
  for (std::size_t j = 0; j < slice_count(op); ++j) {
    for (std::size_t c = 0; c < 6; ++c) {
      for (std::size_t r = 0; r < 6; ++r) {
        if (r != c) off_diag = std::max(off_diag, std::abs(op.at({r, c, j})));
      }
    }
  }
  s.report("experiments", "destripe operator is facewise diagonal", off_diag == 0.0, off_diag,
           0.0);

  DenseTensor ref = DenseTensor::from_real({2, 2}, {1, 1, 1, 1});
  DenseTensor est = DenseTensor::from_real({2, 2}, {1, 0.5, 1, 1});
  const double psnr_err = std::abs(metric_psnr(est, ref) - 10.0 * std::log10(16.0));
  s.report("experiments", "psnr reference value", psnr_err < 1e-12, psnr_err, 1e-12);

  DenseTensor truth = s.random_tensor({3, 2, 2});
  DenseTensor guess = s.random_tensor({3, 2, 2});
  const double invariance =
      std::abs(metric_re(scale(guess, 7.5), scale(truth, 7.5)) - metric_re(guess, truth));
  s.report("experiments", "relative error is scale invariant", invariance < 1e-12, invariance,
           1e-12);
}

}  // namespace

std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& opt) {
  Suite s;
  s.rng.seed(opt.seed);
  s.draws = opt.full ? 25 : 5;
  s.solve_iters = opt.full ? 4000 : 1500;
  check_transforms(s);
  check_tprod(s);
  check_tsvd(s);
  check_prox(s);
  check_solver(s);
  check_experiments(s);
  return std::move(s.results);
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

}  // namespace hotk

// hotk: command line front end for the tensor recovery library.
// Exit codes: 0 success, 1 usage or file format error, 2 numerical failure.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hotk/errors.hpp"
#include "hotk/experiments.hpp"
#include "hotk/hot1.hpp"
#include "hotk/io.hpp"
#include "hotk/prox.hpp"
#include "hotk/selfcheck.hpp"
#include "hotk/solver.hpp"
#include "hotk/tensor.hpp"
#include "hotk/tprod.hpp"
#include "hotk/transform.hpp"

namespace {

using namespace hotk;

Dims parse_dims(const std::string& text) {
  Dims dims;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = text.find('x', pos);
    const std::string tok =
        next == std::string::npos ? text.substr(pos) : text.substr(pos, next - pos);
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(tok, &used);
      if (used != tok.size() || v == 0) throw std::invalid_argument(tok);
      dims.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ValueError("bad dims string '" + text + "': expected positive integers joined by x");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (dims.size() < 2) {
    throw ValueError("bad dims string '" + text + "': at least two dims required");
  }
  return dims;
}

std::string format_dims(const Dims& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i > 0) s += 'x';
    s += std::to_string(dims[i]);
  }
  return s;
}

Dims higher_dims_of(const Dims& dims) { return Dims(dims.begin() + 2, dims.end()); }

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) {
    std::cerr << "warning: " << w << '\n';
  }
}

// ---- subcommand option bags ----

struct ProxArgs {
  std::string in, out, transform = "identity";
  int p = 1;
  double lambda = 0.0;
  bool nuclear = false;
  NuclearN nconv = NuclearN::CoreEntries;
};

struct SolveArgs {
  std::string problem, mode, trace, out;
  SolverConfig cfg;
};

struct SynthArgs {
  std::string out, kind = "sparse", a_dims, x_dims, transform = "dft";
  double density = 1.0;
  std::size_t rank = 1;
  std::uint64_t seed = 0;
};

struct DestripeArgs {
  std::string out, image, synthetic, transform = "identity";
  std::size_t period = 0;
  double attenuation = 0.01;
  std::size_t rank = 2;
  std::uint64_t seed = 0;
};

struct DeconvArgs {
  std::string out, video, synthetic, psf, transform = "dft";
  std::size_t psf_size = 5;
  double psf_sigma = 1.0;
  std::uint64_t seed = 0;
};

struct VerifyArgs {
  bool full = false;
  std::uint64_t seed = 0;
};

void run_prox(const ProxArgs& a) {
  DenseTensor z = read_hot1(a.in);
  ProxParams prm{a.p, a.lambda};
  DenseTensor result;
  if (a.nuclear) {
    LinearTransform l = parse_transform(a.transform, higher_mode_dims(z));
    result = prox_nl1p(z, prm, l, a.nconv);
  } else {
    result = prox_l1p(z, prm);
  }
  write_hot1(a.out, result);
  std::cerr << "prox: wrote " << a.out << '\n';
}

void run_solve(const SolveArgs& a) {
  RecoveryProblem prob = load_problem(a.problem);
  if (a.mode == "sparse") {
    prob.mode = Regularizer::Elementwise;
  } else if (a.mode == "lowrank") {
    prob.mode = Regularizer::Nuclear;
  } else if (!a.mode.empty()) {
    throw ValueError("unknown mode '" + a.mode + "', expected sparse or lowrank");
  }
  SolveResult res = solve(prob, a.cfg);
  print_warnings(res.warnings);
  if (!a.trace.empty()) write_trace_csv(a.trace, res.trace);
  if (!a.out.empty()) write_hot1(a.out, res.x);
  std::cerr << "solve: " << res.iterations << " iterations, "
            << (res.converged ? "converged" : "iteration limit reached");
  if (prob.ground_truth) {
    std::cerr << ", re=" << metric_re(res.x, *prob.ground_truth)
              << ", psnr=" << metric_psnr(res.x, *prob.ground_truth);
  }
  std::cerr << '\n';
}

void run_synth(const SynthArgs& a) {
  SyntheticSpec spec;
  spec.a_dims = parse_dims(a.a_dims);
  spec.x_dims = parse_dims(a.x_dims);
  spec.density = a.density;
  spec.rank = a.rank;
  spec.seed = a.seed;
  LinearTransform l = parse_transform(a.transform, higher_dims_of(spec.a_dims));
  std::map<std::string, std::string> extra{{"seed", std::to_string(a.seed)},
                                           {"transform", a.transform}};
  RecoveryProblem prob;
  if (a.kind == "sparse") {
    prob = gen_sparse_problem(spec, l);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", a.density);
    extra["density"] = buf;
  } else {
    prob = gen_lowrank_problem(spec, l);
    extra["rank"] = std::to_string(a.rank);
  }
  save_problem(a.out, prob, extra);
  std::cerr << "synth: wrote " << a.kind << " problem to " << a.out << '\n';
}

void run_destripe(const DestripeArgs& a) {
  DenseTensor truth;
  LinearTransform l;
  if (!a.image.empty()) {
    truth = read_hot1(a.image);
    l = parse_transform(a.transform, higher_mode_dims(truth));
  } else {
    Dims dims = parse_dims(a.synthetic);
    l = parse_transform(a.transform, higher_dims_of(dims));
    truth = gen_lowrank_stack(dims, a.rank, a.seed, l);
  }
  std::vector<std::string> warnings;
  DenseTensor op = build_destripe_operator(truth.dims(), a.period, a.attenuation, &warnings);
  print_warnings(warnings);
  RecoveryProblem prob;
  prob.a = op;
  prob.b = tprod(op, truth, l);
  prob.transform = l;
  prob.mode = Regularizer::Nuclear;
  prob.ground_truth = truth;
  save_problem(a.out, prob,
               {{"transform", a.transform},
                {"stripe_period", std::to_string(a.period)},
                {"seed", std::to_string(a.seed)}});
  std::cerr << "destripe: wrote problem to " << a.out << '\n';
}

void run_deconv(const DeconvArgs& a) {
  DenseTensor video;
  if (!a.video.empty()) {
    video = read_hot1(a.video);
  } else {
    Dims dims = parse_dims(a.synthetic);
    if (dims.size() != 3 && dims.size() != 4) {
      throw ValueError("deconv: synthetic video dims must have order 3 or 4");
    }
    std::mt19937_64 rng(a.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    video = DenseTensor::zeros(dims);
    for (double& v : video.rdata()) v = nd(rng);
  }
  Psf psf = a.psf.empty() ? psf_gaussian(a.psf_size, a.psf_sigma) : Psf{read_hot1(a.psf)};
  DenseTensor op = build_conv_operator(psf, video.dims());
  const std::size_t m = video.dim(2) + psf.h.dim(0) - 1;
  DenseTensor padded = zero_pad_mode(video, 2, m);
  LinearTransform l = parse_transform(a.transform, higher_mode_dims(op));
  RecoveryProblem prob;
  prob.a = op;
  prob.b = tprod(op, padded, l);
  prob.transform = l;
  prob.mode = Regularizer::Elementwise;
  prob.ground_truth = padded;
  save_problem(a.out, prob,
               {{"transform", a.transform}, {"video_dims", format_dims(video.dims())}});
  std::cerr << "deconv: wrote problem to " << a.out << '\n';
}

void run_verify(const VerifyArgs& a) {
  SelfcheckOptions opt;
  opt.full = a.full;
  opt.seed = a.seed;
  std::vector<CheckResult> results = run_selfcheck(opt);
  std::size_t group_w = 5, name_w = 4;
  for (const CheckResult& r : results) {
    group_w = std::max(group_w, r.group.size());
    name_w = std::max(name_w, r.name.size());
  }
  std::printf("%-*s  %-*s  %-6s  %s\n", static_cast<int>(group_w), "group",
              static_cast<int>(name_w), "name", "result", "detail");
  std::size_t failures = 0;
  for (const CheckResult& r : results) {
    std::printf("%-*s  %-*s  %-6s  %s\n", static_cast<int>(group_w), r.group.c_str(),
                static_cast<int>(name_w), r.name.c_str(), r.passed ? "PASS" : "FAIL",
                r.detail.c_str());
    if (!r.passed) ++failures;
  }
  std::printf("%zu checks, %zu failed\n", results.size(), failures);
  if (failures > 0) {
    throw NumericError("verify: " + std::to_string(failures) + " property checks failed");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensor recovery toolkit: transforms, products, shrinkage, solvers"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; command-line flags win");
  app.failure_message(CLI::FailureMessage::help);

  const std::map<std::string, SelectionRule> selection_map{{"cyclic", SelectionRule::Cyclic},
                                                           {"random", SelectionRule::Random}};
  const std::map<std::string, PartitionRule> partition_map{
      {"contiguous", PartitionRule::Contiguous}, {"shuffled", PartitionRule::Shuffled}};
  const std::map<std::string, BlockWeights> weights_map{{"auto", BlockWeights::Auto},
                                                        {"uniform", BlockWeights::Uniform},
                                                        {"norm", BlockWeights::NormProportional}};
  const std::map<std::string, MomentumRule> momentum_map{
      {"nesterov", MomentumRule::Nesterov}, {"iter-ratio", MomentumRule::IterRatio}};
  const std::map<std::string, NuclearN> nconv_map{{"core", NuclearN::CoreEntries},
                                                  {"tubes", NuclearN::DiagTubes}};

  ProxArgs prox_args;
  CLI::App* prox_cmd = app.add_subcommand("prox", "apply the shrinkage operator to a tensor file");
  prox_cmd->add_option("--in", prox_args.in, "input tensor (HOT1)")->required();
  prox_cmd->add_option("--out", prox_args.out, "output tensor (HOT1)")->required();
  prox_cmd->add_option("--p", prox_args.p, "regularizer power, 1..4")->capture_default_str();
  prox_cmd->add_option("--lambda", prox_args.lambda, "regularizer weight")->capture_default_str();
  prox_cmd->add_flag("--nuclear", prox_args.nuclear, "shrink the factorization core instead of entries");
  prox_cmd->add_option("--transform", prox_args.transform,
                       "transform selector for --nuclear: identity|dft|dft-unitary|dct|custom:<dir>")
      ->capture_default_str();
  prox_cmd->add_option("--n-convention", prox_args.nconv, "entry count convention for --nuclear")
      ->transform(CLI::CheckedTransformer(nconv_map, CLI::ignore_case));
  prox_cmd->callback([&] { run_prox(prox_args); });

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run the iterative solver on a problem directory");
  solve_cmd->add_option("--problem", solve_args.problem, "problem directory")->required();
  solve_cmd->add_option("--mode", solve_args.mode, "override manifest mode: sparse|lowrank");
  solve_cmd->add_option("--p", solve_args.cfg.p, "regularizer power, 1..4")->capture_default_str();
  solve_cmd->add_option("--lambda", solve_args.cfg.lambda, "regularizer weight")
      ->capture_default_str();
  solve_cmd->add_option("--t", solve_args.cfg.t, "step size")->capture_default_str();
  solve_cmd->add_option("--blocks", solve_args.cfg.blocks, "row block count; 0 = one row per block")
      ->capture_default_str();
  solve_cmd->add_option("--selection", solve_args.cfg.selection, "block selection rule")
      ->transform(CLI::CheckedTransformer(selection_map, CLI::ignore_case));
  solve_cmd->add_option("--partition", solve_args.cfg.partition, "row partition rule")
      ->transform(CLI::CheckedTransformer(partition_map, CLI::ignore_case));
  solve_cmd->add_option("--weights", solve_args.cfg.weights, "random selection weights")
      ->transform(CLI::CheckedTransformer(weights_map, CLI::ignore_case));
  solve_cmd->add_flag("--accelerated", solve_args.cfg.accelerated, "enable the momentum variant");
  solve_cmd->add_option("--momentum", solve_args.cfg.momentum, "momentum rule")
      ->transform(CLI::CheckedTransformer(momentum_map, CLI::ignore_case));
  solve_cmd->add_option("--nuclear-n", solve_args.cfg.nuclear_n,
                        "entry count convention in lowrank mode")
      ->transform(CLI::CheckedTransformer(nconv_map, CLI::ignore_case));
  solve_cmd->add_option("--max-iters", solve_args.cfg.max_iters, "iteration budget")
      ->capture_default_str();
  solve_cmd->add_option("--tol", solve_args.cfg.tol, "relative-change stopping tolerance")
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve_args.cfg.seed, "random generator seed")
      ->capture_default_str();
  solve_cmd->add_option("--trace-every", solve_args.cfg.trace_every, "record every k-th iteration")
      ->capture_default_str();
  solve_cmd->add_option("--trace", solve_args.trace, "write the trace CSV here");
  solve_cmd->add_option("--out", solve_args.out, "write the solution tensor here (HOT1)");
  solve_cmd->callback([&] { run_solve(solve_args); });

  SynthArgs synth_args;
  CLI::App* synth_cmd = app.add_subcommand("synth", "generate a random problem directory");
  synth_cmd->add_option("--out", synth_args.out, "problem directory to create")->required();
  synth_cmd->add_option("--kind", synth_args.kind, "sparse|lowrank")
      ->check(CLI::IsMember({"sparse", "lowrank"}))
      ->capture_default_str();
  synth_cmd->add_option("--a-dims", synth_args.a_dims, "operator dims, e.g. 20x2x8x8")->required();
  synth_cmd->add_option("--x-dims", synth_args.x_dims, "solution dims, e.g. 2x8x8x8")->required();
  synth_cmd->add_option("--density", synth_args.density, "nonzero fraction of the sparse truth")
      ->capture_default_str();
  synth_cmd->add_option("--rank", synth_args.rank, "factor width of the lowrank truth")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth_args.seed, "random generator seed")->capture_default_str();
  synth_cmd->add_option("--transform", synth_args.transform, "transform selector")
      ->capture_default_str();
  synth_cmd->callback([&] { run_synth(synth_args); });

  DestripeArgs destripe_args;
  CLI::App* destripe_cmd =
      app.add_subcommand("destripe", "build a row-attenuation recovery problem");
  destripe_cmd->add_option("--out", destripe_args.out, "problem directory to create")->required();
  CLI::Option* image_opt =
      destripe_cmd->add_option("--image", destripe_args.image, "clean image stack (HOT1)");
  destripe_cmd->add_option("--synthetic", destripe_args.synthetic,
                           "generate a low-rank stack of these dims instead, e.g. 16x12x8x4")
      ->excludes(image_opt);
  destripe_cmd->add_option("--period", destripe_args.period, "attenuate every k-th row, k >= 2")
      ->required();
  destripe_cmd->add_option("--attenuation", destripe_args.attenuation, "row scale factor in (0, 1]")
      ->capture_default_str();
  destripe_cmd->add_option("--rank", destripe_args.rank, "rank of the synthetic stack")
      ->capture_default_str();
  destripe_cmd->add_option("--seed", destripe_args.seed, "random generator seed")
      ->capture_default_str();
  destripe_cmd->add_option("--transform", destripe_args.transform, "transform selector")
      ->capture_default_str();
  destripe_cmd->callback([&] {
    if (destripe_args.image.empty() && destripe_args.synthetic.empty()) {
      throw CLI::RequiredError("destripe: one of --image or --synthetic");
    }
    run_destripe(destripe_args);
  });

  DeconvArgs deconv_args;
  CLI::App* deconv_cmd = app.add_subcommand("deconv", "build a deconvolution recovery problem");
  deconv_cmd->add_option("--out", deconv_args.out, "problem directory to create")->required();
  CLI::Option* video_opt =
      deconv_cmd->add_option("--video", deconv_args.video, "input video tensor (HOT1)");
  deconv_cmd->add_option("--synthetic", deconv_args.synthetic,
                         "generate a random video of these dims instead, e.g. 8x3x8x2")
      ->excludes(video_opt);
  CLI::Option* psf_opt = deconv_cmd->add_option("--psf", deconv_args.psf, "kernel tensor (HOT1)");
  deconv_cmd->add_option("--psf-size", deconv_args.psf_size, "Gaussian kernel size (odd)")
      ->capture_default_str()
      ->excludes(psf_opt);
  deconv_cmd->add_option("--psf-sigma", deconv_args.psf_sigma, "Gaussian kernel width")
      ->capture_default_str()
      ->excludes(psf_opt);
  deconv_cmd->add_option("--seed", deconv_args.seed, "random generator seed")
      ->capture_default_str();
  deconv_cmd->add_option("--transform", deconv_args.transform, "transform selector")
      ->capture_default_str();
  deconv_cmd->callback([&] {
    if (deconv_args.video.empty() && deconv_args.synthetic.empty()) {
      throw CLI::RequiredError("deconv: one of --video or --synthetic");
    }
    run_deconv(deconv_args);
  });

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the built-in property suite");
  CLI::Option* full_opt =
      verify_cmd->add_flag("--full", verify_args.full, "larger sample counts and budgets");
  verify_cmd->add_flag("--quick", "reduced sample counts (default)")->excludes(full_opt);
  verify_cmd->add_option("--seed", verify_args.seed, "random generator seed")
      ->capture_default_str();
  verify_cmd->callback([&] { run_verify(verify_args); });

  // Lets --config appear after the subcommand name.
  for (CLI::App* sub : app.get_subcommands(nullptr)) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

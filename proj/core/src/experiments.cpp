#include "hotk/experiments.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "hotk/errors.hpp"
#include "hotk/tprod.hpp"

namespace hotk {

namespace {

void check_pair(const SyntheticSpec& spec) {
  if (spec.a_dims.size() < 2 || spec.x_dims.size() < 2) {
    throw ValueError("synthetic spec: a_dims and x_dims must have order >= 2");
  }
  if (spec.a_dims.size() != spec.x_dims.size()) {
    throw ValueError("synthetic spec: a_dims and x_dims have different orders");
  }
  if (spec.a_dims[1] != spec.x_dims[0]) {
    throw ValueError("synthetic spec: a_dims[1] and x_dims[0] disagree");
  }
  for (std::size_t k = 2; k < spec.a_dims.size(); ++k) {
    if (spec.a_dims[k] != spec.x_dims[k]) {
      throw ValueError("synthetic spec: higher dims of a_dims and x_dims disagree");
    }
  }
}

DenseTensor random_normal(const Dims& dims, std::mt19937_64& rng) {
  DenseTensor t = DenseTensor::zeros(dims);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (double& v : t.rdata()) {
    v = nd(rng);
  }
  return t;
}

// 53-bit mantissa draw, identical across standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

RecoveryProblem gen_sparse_problem(const SyntheticSpec& spec, const LinearTransform& l) {
  check_pair(spec);
  if (!(spec.density > 0.0 && spec.density <= 1.0)) {
    throw ValueError("gen_sparse_problem: density must lie in (0, 1]");
  }
  std::mt19937_64 rng(spec.seed);
  RecoveryProblem prob;
  prob.a = random_normal(spec.a_dims, rng);
  DenseTensor truth = random_normal(spec.x_dims, rng);
  for (double& v : truth.rdata()) {
    if (uniform01(rng) >= spec.density) {
      v = 0.0;
    }
  }
  prob.b = tprod(prob.a, truth, l);
  prob.transform = l;
  prob.mode = Regularizer::Elementwise;
  prob.ground_truth = std::move(truth);
  return prob;
}

RecoveryProblem gen_lowrank_problem(const SyntheticSpec& spec, const LinearTransform& l) {
  check_pair(spec);
  if (spec.rank < 1 || spec.rank > std::min(spec.x_dims[0], spec.x_dims[1])) {
    throw ValueError("gen_lowrank_problem: rank must lie in [1, min(x rows, x cols)]");
  }
  std::mt19937_64 rng(spec.seed);
  RecoveryProblem prob;
  prob.a = random_normal(spec.a_dims, rng);
  Dims g1_dims = spec.x_dims;
  g1_dims[1] = spec.rank;
  Dims g2_dims = spec.x_dims;
  g2_dims[0] = spec.rank;
  DenseTensor g1 = random_normal(g1_dims, rng);
  DenseTensor g2 = random_normal(g2_dims, rng);
  DenseTensor truth = tprod(g1, g2, l);
  prob.b = tprod(prob.a, truth, l);
  prob.transform = l;
  prob.mode = Regularizer::Nuclear;
  prob.ground_truth = std::move(truth);
  return prob;
}

DenseTensor gen_lowrank_stack(const Dims& dims, std::size_t rank, std::uint64_t seed,
                              const LinearTransform& l) {
  if (dims.size() < 2) {
    throw ValueError("gen_lowrank_stack: dims must have order >= 2");
  }
  if (rank < 1 || rank > std::min(dims[0], dims[1])) {
    throw ValueError("gen_lowrank_stack: rank must lie in [1, min(rows, cols)]");
  }
  std::mt19937_64 rng(seed);
  Dims g1_dims = dims;
  g1_dims[1] = rank;
  Dims g2_dims = dims;
  g2_dims[0] = rank;
  DenseTensor g1 = random_normal(g1_dims, rng);
  DenseTensor g2 = random_normal(g2_dims, rng);
  return tprod(g1, g2, l);
}

DenseTensor build_destripe_operator(const Dims& image_dims, std::size_t stripe_period,
                                    double attenuation, std::vector<std::string>* warnings) {
  if (image_dims.size() < 2) {
    throw ValueError("build_destripe_operator: image dims must have order >= 2");
  }
  if (stripe_period < 2) {
    throw ValueError("build_destripe_operator: stripe period must be >= 2");
  }
  if (!(attenuation > 0.0 && attenuation <= 1.0)) {
    throw ValueError("build_destripe_operator: attenuation must lie in (0, 1]");
  }
  const std::size_t n1 = image_dims[0];
  if (stripe_period > n1 && warnings != nullptr) {
    warnings->push_back("build_destripe_operator: stripe period " +
                        std::to_string(stripe_period) + " exceeds row count " +
                        std::to_string(n1) + "; no rows attenuated");
  }
  Dims op_dims = image_dims;
  op_dims[1] = n1;
  DenseTensor op = DenseTensor::zeros(op_dims);
  auto data = op.rdata();
  const std::size_t per_slice = n1 * n1;
  const std::size_t slices = op.numel() / per_slice;
  for (std::size_t s = 0; s < slices; ++s) {
    for (std::size_t i = 0; i < n1; ++i) {
      data[s * per_slice + i * n1 + i] = ((i + 1) % stripe_period == 0) ? attenuation : 1.0;
    }
  }
  return op;
}

Psf psf_gaussian(std::size_t size, double sigma) {
  if (size == 0 || size % 2 == 0) {
    throw ValueError("psf_gaussian: size must be odd");
  }
  if (!(sigma > 0.0)) {
    throw ValueError("psf_gaussian: sigma must be positive");
  }
  DenseTensor h = DenseTensor::zeros({size, size});
  auto data = h.rdata();
  const double c = (static_cast<double>(size) - 1.0) / 2.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < size; ++j) {
    for (std::size_t i = 0; i < size; ++i) {
      const double dy = static_cast<double>(i) - c;
      const double dx = static_cast<double>(j) - c;
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      data[j * size + i] = v;
      sum += v;
    }
  }
  for (double& v : data) {
    v /= sum;
  }
  return Psf{std::move(h)};
}

DenseTensor build_conv_operator(const Psf& psf, const Dims& video_dims) {
  const DenseTensor& h = psf.h;
  if (h.order() != 2 || h.is_complex()) {
    throw ValueError("build_conv_operator: kernel must be a real order-2 tensor");
  }
  if (video_dims.size() != 3 && video_dims.size() != 4) {
    throw ValueError("build_conv_operator: video dims must have order 3 or 4");
  }
  for (std::size_t d : video_dims) {
    if (d == 0) {
      throw ValueError("build_conv_operator: video dims must be positive");
    }
  }
  const std::size_t m2 = h.dim(0);
  const std::size_t n2 = h.dim(1);
  const std::size_t n1 = video_dims[0];
  const std::size_t m1 = video_dims[2];
  const std::size_t q = video_dims.size() == 4 ? video_dims[3] : 1;
  const std::size_t m = m1 + m2 - 1;
  const std::size_t n = n1 + n2 - 1;

  // Frame operator: frontal slice k is the banded matrix T(u, v) = h(k, u - v),
  // so the slab product sums h over shifts of the frame columns while the
  // circulant action over mode 3 sums over shifts of the frame rows.
  DenseTensor frame = DenseTensor::zeros({n, n1, m});
  auto fd = frame.rdata();
  auto hd = h.rdata();
  for (std::size_t k = 0; k < m2; ++k) {
    for (std::size_t v = 0; v < n1; ++v) {
      for (std::size_t s = 0; s < n2; ++s) {
        fd[k * n * n1 + v * n + (v + s)] = hd[s * m2 + k];
      }
    }
  }
  if (video_dims.size() == 3) {
    return frame;
  }

  // Frames are filtered independently, so the expanded operator is block
  // diagonal with q copies of the frame operator; the inverse circ folds it
  // back to one mode-4 generator slice.
  DenseTensor expanded = DenseTensor::zeros({n * q, n1 * q, m});
  auto ed = expanded.rdata();
  const std::size_t rows = n * q;
  const std::size_t cols = n1 * q;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t v = 0; v < n1; ++v) {
      for (std::size_t u = 0; u < n; ++u) {
        const double val = fd[k * n * n1 + v * n + u];
        if (val == 0.0) {
          continue;
        }
        for (std::size_t t = 0; t < q; ++t) {
          ed[k * rows * cols + (t * n1 + v) * rows + (t * n + u)] = val;
        }
      }
    }
  }
  return circ_inv(expanded, q);
}

double metric_re(const DenseTensor& x, const DenseTensor& ref) {
  if (!same_dims(x, ref)) {
    throw ValueError("metric_re: shapes disagree");
  }
  const double ref_norm = norm_fro(ref);
  if (ref_norm == 0.0) {
    throw ValueError("metric_re: reference tensor has zero norm");
  }
  return norm_fro(sub(ref, x)) / ref_norm;
}

double metric_psnr(const DenseTensor& x, const DenseTensor& ref) {
  if (!same_dims(x, ref)) {
    throw ValueError("metric_psnr: shapes disagree");
  }
  const double err = norm_fro(sub(x, ref));
  if (err == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double peak = norm_inf(ref);
  const double count = static_cast<double>(x.numel());
  return 10.0 * std::log10(count * peak * peak / (err * err));
}

}  // namespace hotk

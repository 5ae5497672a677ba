#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hotk/solver.hpp"
#include "hotk/tensor.hpp"
#include "hotk/transform.hpp"

namespace hotk {

// Shapes and knobs for generated test problems.  a_dims is n1 x n2 x higher,
// x_dims is n2 x l x higher with the same higher dims.
struct SyntheticSpec {
  Dims a_dims;
  Dims x_dims;
  double density = 1.0;  // fraction of nonzero entries in the sparse truth
  std::size_t rank = 1;  // factor width of the low-rank truth
  std::uint64_t seed = 0;
};

// A filled with i.i.d. standard normals; truth standard normal with entries
// zeroed independently with probability 1-density; b computed exactly as
// a * truth.
RecoveryProblem gen_sparse_problem(const SyntheticSpec& spec, const LinearTransform& l);

// Truth is a product of two random normal factors of width rank, so its
// factorization rank is at most rank.
RecoveryProblem gen_lowrank_problem(const SyntheticSpec& spec, const LinearTransform& l);

// Standalone random stack with factorization rank at most rank; stands in for
// real image data in the destriping experiment.
DenseTensor gen_lowrank_stack(const Dims& dims, std::size_t rank, std::uint64_t seed,
                              const LinearTransform& l);

// Row-scaling operator for image stacks: every spatial frontal slice is the
// same diagonal matrix with 1 on the diagonal except every stripe_period-th
// row (1-based), which gets the attenuation factor.  image_dims are the dims
// of the stack the operator acts on; the result is n1 x n1 x higher.
DenseTensor build_destripe_operator(const Dims& image_dims, std::size_t stripe_period,
                                    double attenuation = 0.01,
                                    std::vector<std::string>* warnings = nullptr);

// 2-D convolution kernel, stored as an order-2 tensor of size m2 x n2.
struct Psf {
  DenseTensor h;
};

// Centered Gaussian kernel exp(-(x^2+y^2)/(2 sigma^2)) on a size x size grid,
// normalized to sum 1.  size must be odd.
Psf psf_gaussian(std::size_t size, double sigma);

// Convolution operator for a video of dims n1 x p x m1 x q (frame pixel grid
// = mode 3 rows by mode 1 columns, p channels, q frames).  Returns A of dims
// n x n1 x m x q with m = m1+m2-1, n = n1+n2-1, built as the inverse circ of
// the doubly block circulant expansion, such that the product of A with the
// mode-3 zero-padded video under the plain DFT equals frame-wise full 2-D
// convolution with the kernel.
DenseTensor build_conv_operator(const Psf& psf, const Dims& video_dims);

// Relative error ||ref - x||_F / ||ref||_F.
double metric_re(const DenseTensor& x, const DenseTensor& ref);

// 10*log10(N * max|ref|^2 / ||x - ref||_F^2) with N the entry count;
// +infinity when x equals ref.
double metric_psnr(const DenseTensor& x, const DenseTensor& ref);

}  // namespace hotk

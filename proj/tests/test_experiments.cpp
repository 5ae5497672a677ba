#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "hotk/errors.hpp"
#include "hotk/experiments.hpp"
#include "hotk/solver.hpp"
#include "hotk/tensor.hpp"
#include "hotk/tprod.hpp"
#include "hotk/transform.hpp"
#include "test_util.hpp"

using hotk::DenseTensor;
using hotk::Dims;
using hotk::LinearTransform;
using hotk::test::max_abs_diff;
using hotk::test::random_tensor;

namespace {

// Reference full 2-D convolution of every frame and channel by explicit
// summation.  The frame pixel grid is mode 3 (rows) by mode 1 (columns);
// mode 2 indexes channels and mode 4 frames.  Kept free of any library
// machinery on purpose.
DenseTensor conv_reference(const DenseTensor& h, const DenseTensor& x) {
  const std::size_t m2 = h.dim(0);
  const std::size_t n2 = h.dim(1);
  const std::size_t n1 = x.dim(0);
  const std::size_t p = x.dim(1);
  const std::size_t m1 = x.dim(2);
  const std::size_t q = x.order() == 4 ? x.dim(3) : 1;
  const std::size_t n = n1 + n2 - 1;
  const std::size_t m = m1 + m2 - 1;
  Dims out_dims = {n, p, m};
  if (x.order() == 4) out_dims.push_back(q);
  DenseTensor y = DenseTensor::zeros(out_dims);
  auto yd = y.rdata();
  auto xd = x.rdata();
  auto hd = h.rdata();
  for (std::size_t f = 0; f < q; ++f) {
    for (std::size_t c = 0; c < p; ++c) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t u = 0; u < n; ++u) {
          double acc = 0.0;
          for (std::size_t k = 0; k < m1; ++k) {
            if (j < k || j - k >= m2) continue;
            for (std::size_t v = 0; v < n1; ++v) {
              if (u < v || u - v >= n2) continue;
              acc += hd[(u - v) * m2 + (j - k)] * xd[((f * m1 + k) * p + c) * n1 + v];
            }
          }
          yd[((f * m + j) * p + c) * n + u] = acc;
        }
      }
    }
  }
  return y;
}

DenseTensor apply_conv(const hotk::Psf& psf, const DenseTensor& x) {
  const std::size_t m = x.dim(2) + psf.h.dim(0) - 1;
  DenseTensor a = hotk::build_conv_operator(psf, x.dims());
  DenseTensor xp = hotk::zero_pad_mode(x, 2, m);
  return hotk::classical_tprod(a, xp);
}

}  // namespace

TEST_CASE("gaussian psf basics") {
  hotk::Psf one = hotk::psf_gaussian(1, 2.0);
  REQUIRE(one.h.dims() == Dims{1, 1});
  CHECK(one.h.flat(0).real() == doctest::Approx(1.0).epsilon(1e-15));

  hotk::Psf flat = hotk::psf_gaussian(3, 1e6);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(flat.h.flat(i).real() == doctest::Approx(1.0 / 9.0).epsilon(1e-6));
  }

  hotk::Psf g = hotk::psf_gaussian(5, 1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < 25; ++i) sum += g.h.flat(i).real();
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  // Center-to-corner ratio exp(4) survives normalization.
  const double center = g.h.at({2, 2}).real();
  const double corner = g.h.at({0, 0}).real();
  CHECK(center / corner == doctest::Approx(std::exp(4.0)).epsilon(1e-12));
  // Symmetry under both reflections.
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(g.h.at({i, j}).real() == doctest::Approx(g.h.at({4 - i, j}).real()));
      CHECK(g.h.at({i, j}).real() == doctest::Approx(g.h.at({j, i}).real()));
    }
  }

  CHECK_THROWS_AS(hotk::psf_gaussian(4, 1.0), hotk::ValueError);
  CHECK_THROWS_AS(hotk::psf_gaussian(0, 1.0), hotk::ValueError);
  CHECK_THROWS_AS(hotk::psf_gaussian(3, 0.0), hotk::ValueError);
  CHECK_THROWS_AS(hotk::psf_gaussian(3, -1.0), hotk::ValueError);
}

TEST_CASE("delta kernel gives an identity convolution operator") {
  hotk::Psf delta{DenseTensor::from_real({1, 1}, {1.0})};
  DenseTensor x = random_tensor({4, 2, 3, 2}, false, 11);
  DenseTensor y = apply_conv(delta, x);
  REQUIRE(y.dims() == x.dims());
  CHECK(max_abs_diff(y, x) == 0.0);

  hotk::Psf gain{DenseTensor::from_real({1, 1}, {-2.5})};
  DenseTensor y2 = apply_conv(gain, x);
  CHECK(max_abs_diff(y2, hotk::scale(x, -2.5)) < 1e-15);
}

TEST_CASE("convolution operator matches direct summation on order-3 stacks") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseTensor h = DenseTensor::zeros({3, 2});
  for (double& v : h.rdata()) v = u(rng);
  DenseTensor x = random_tensor({4, 2, 5}, false, 21);

  DenseTensor want = conv_reference(h, x);
  DenseTensor got = apply_conv(hotk::Psf{h}, x);
  REQUIRE(got.dims() == Dims{5, 2, 7});
  CHECK(max_abs_diff(got, want) < 1e-12);
}

TEST_CASE("convolution operator matches direct summation on a video") {
  hotk::Psf g = hotk::psf_gaussian(5, 1.0);
  DenseTensor x = random_tensor({8, 3, 8, 2}, false, 33);

  DenseTensor a = hotk::build_conv_operator(g, x.dims());
  REQUIRE(a.dims() == Dims{12, 8, 12, 2});
  DenseTensor xp = hotk::zero_pad_mode(x, 2, 12);
  DenseTensor want = conv_reference(g.h, x);

  DenseTensor via_classical = hotk::classical_tprod(a, xp);
  CHECK(max_abs_diff(via_classical, want) < 1e-8);

  LinearTransform l = LinearTransform::dft({12, 2});
  DenseTensor via_transform = hotk::tprod(a, xp, l);
  REQUIRE(!via_transform.is_complex());
  CHECK(max_abs_diff(via_transform, want) < 1e-8);
}

TEST_CASE("video operator is frame-diagonal and embeds the frame operator") {
  hotk::Psf g = hotk::psf_gaussian(3, 0.7);
  DenseTensor a4 = hotk::build_conv_operator(g, {6, 2, 4, 3});
  DenseTensor a3 = hotk::build_conv_operator(g, {6, 2, 4});
  REQUIRE(a4.dims() == Dims{8, 6, 6, 3});
  REQUIRE(a3.dims() == Dims{8, 6, 6});
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t k = 0; k < 6; ++k) {
      for (std::size_t v = 0; v < 6; ++v) {
        for (std::size_t u = 0; u < 8; ++u) {
          const double got = a4.at({u, v, k, t}).real();
          const double want = t == 0 ? a3.at({u, v, k}).real() : 0.0;
          CHECK(got == want);
        }
      }
    }
  }
}

TEST_CASE("convolution operator input validation") {
  hotk::Psf g = hotk::psf_gaussian(3, 1.0);
  CHECK_THROWS_AS(hotk::build_conv_operator(g, {4, 2}), hotk::ValueError);
  CHECK_THROWS_AS(hotk::build_conv_operator(g, {4, 2, 3, 2, 2}), hotk::ValueError);
  CHECK_THROWS_AS(hotk::build_conv_operator(g, {4, 0, 3}), hotk::ValueError);
  hotk::Psf bad{DenseTensor::zeros({2, 2, 2})};
  CHECK_THROWS_AS(hotk::build_conv_operator(bad, {4, 2, 3}), hotk::ValueError);
}

TEST_CASE("destripe operator layout") {
  DenseTensor op = hotk::build_destripe_operator({6, 4, 3}, 3, 0.25);
  REQUIRE(op.dims() == Dims{6, 6, 3});
  REQUIRE(!op.is_complex());
  for (std::size_t s = 0; s < 3; ++s) {
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        const double v = op.at({i, j, s}).real();
        if (i != j) {
          CHECK(v == 0.0);
        } else if ((i + 1) % 3 == 0) {
          CHECK(v == 0.25);
        } else {
          CHECK(v == 1.0);
        }
      }
    }
  }
}

TEST_CASE("destripe operator attenuates exactly the marked rows") {
  DenseTensor op = hotk::build_destripe_operator({10, 7, 2}, 5);
  LinearTransform l = LinearTransform::identity({2});
  DenseTensor ones = DenseTensor::zeros({10, 7, 2});
  for (double& v : ones.rdata()) v = 1.0;
  DenseTensor out = hotk::tprod(op, ones, l);
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t j = 0; j < 7; ++j) {
      for (std::size_t i = 0; i < 10; ++i) {
        const double want = (i == 4 || i == 9) ? 0.01 : 1.0;
        CHECK(out.at({i, j, s}).real() == doctest::Approx(want).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("destripe operator with unit attenuation acts as the identity") {
  DenseTensor op = hotk::build_destripe_operator({5, 3, 2}, 2, 1.0);
  DenseTensor x = random_tensor({5, 3, 2}, false, 9);
  DenseTensor out = hotk::tprod(op, x, LinearTransform::identity({2}));
  CHECK(max_abs_diff(out, x) < 1e-15);
}

TEST_CASE("destripe operator warns when the period exceeds the row count") {
  std::vector<std::string> warnings;
  DenseTensor op = hotk::build_destripe_operator({4, 4, 2}, 9, 0.5, &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("exceeds") != std::string::npos);
  DenseTensor x = random_tensor({4, 4, 2}, false, 2);
  DenseTensor out = hotk::tprod(op, x, LinearTransform::identity({2}));
  CHECK(max_abs_diff(out, x) < 1e-15);
}

TEST_CASE("destripe operator input validation") {
  CHECK_THROWS_AS(hotk::build_destripe_operator({6, 4, 3}, 1, 0.5), hotk::ValueError);
  CHECK_THROWS_AS(hotk::build_destripe_operator({6, 4, 3}, 0, 0.5), hotk::ValueError);
  CHECK_THROWS_AS(hotk::build_destripe_operator({6, 4, 3}, 3, 0.0), hotk::ValueError);
  CHECK_THROWS_AS(hotk::build_destripe_operator({6, 4, 3}, 3, 1.5), hotk::ValueError);
  CHECK_THROWS_AS(hotk::build_destripe_operator({6}, 3, 0.5), hotk::ValueError);
}

TEST_CASE("sparse problem generator") {
  hotk::SyntheticSpec spec;
  spec.a_dims = {6, 5, 3, 2};
  spec.x_dims = {5, 4, 3, 2};
  spec.density = 0.4;
  spec.seed = 7;
  LinearTransform l = LinearTransform::dft({3, 2});
  hotk::RecoveryProblem prob = hotk::gen_sparse_problem(spec, l);

  REQUIRE(prob.a.dims() == spec.a_dims);
  REQUIRE(prob.ground_truth.has_value());
  REQUIRE(prob.ground_truth->dims() == spec.x_dims);
  REQUIRE(prob.b.dims() == Dims{6, 4, 3, 2});
  CHECK(prob.mode == hotk::Regularizer::Elementwise);
  CHECK(!prob.a.is_complex());
  CHECK(!prob.ground_truth->is_complex());

  // The right-hand side is the product of the stored operator and truth,
  // recomputed the same way, so it matches to the bit.
  DenseTensor b2 = hotk::tprod(prob.a, *prob.ground_truth, l);
  CHECK(max_abs_diff(prob.b, b2) == 0.0);

  hotk::RecoveryProblem again = hotk::gen_sparse_problem(spec, l);
  CHECK(max_abs_diff(prob.a, again.a) == 0.0);
  CHECK(max_abs_diff(*prob.ground_truth, *again.ground_truth) == 0.0);

  spec.seed = 8;
  hotk::RecoveryProblem other = hotk::gen_sparse_problem(spec, l);
  CHECK(max_abs_diff(prob.a, other.a) > 0.0);
}

TEST_CASE("sparse generator hits the requested density") {
  hotk::SyntheticSpec spec;
  spec.a_dims = {4, 50, 4};
  spec.x_dims = {50, 50, 4};
  spec.density = 0.3;
  spec.seed = 123;
  hotk::RecoveryProblem prob = hotk::gen_sparse_problem(spec, LinearTransform::dft({4}));
  std::size_t nonzero = 0;
  for (double v : prob.ground_truth->rdata()) {
    if (v != 0.0) ++nonzero;
  }
  // Binomial(10000, 0.3): three standard deviations is about 137.
  const double expectation = 0.3 * 10000.0;
  CHECK(std::abs(static_cast<double>(nonzero) - expectation) < 140.0);
}

TEST_CASE("sparse generator input validation") {
  hotk::SyntheticSpec spec;
  spec.a_dims = {6, 5, 3};
  spec.x_dims = {5, 4, 3};
  LinearTransform l = LinearTransform::dft({3});
  spec.density = 0.0;
  CHECK_THROWS_AS(hotk::gen_sparse_problem(spec, l), hotk::ValueError);
  spec.density = 1.5;
  CHECK_THROWS_AS(hotk::gen_sparse_problem(spec, l), hotk::ValueError);
  spec.density = 0.5;
  spec.x_dims = {4, 4, 3};
  CHECK_THROWS_AS(hotk::gen_sparse_problem(spec, l), hotk::ValueError);
  spec.x_dims = {5, 4, 2};
  CHECK_THROWS_AS(hotk::gen_sparse_problem(spec, l), hotk::ValueError);
  spec.x_dims = {5, 4};
  CHECK_THROWS_AS(hotk::gen_sparse_problem(spec, l), hotk::ValueError);
}

TEST_CASE("low-rank problem generator") {
  hotk::SyntheticSpec spec;
  spec.a_dims = {5, 4, 3};
  spec.x_dims = {4, 6, 3};
  spec.rank = 2;
  spec.seed = 17;
  LinearTransform l = LinearTransform::dft({3});
  hotk::RecoveryProblem prob = hotk::gen_lowrank_problem(spec, l);

  REQUIRE(prob.ground_truth.has_value());
  REQUIRE(prob.ground_truth->dims() == spec.x_dims);
  CHECK(prob.mode == hotk::Regularizer::Nuclear);
  CHECK(!prob.ground_truth->is_complex());
  CHECK(hotk::tsvd_rank(*prob.ground_truth, l, 1e-8) == 2);

  DenseTensor b2 = hotk::tprod(prob.a, *prob.ground_truth, l);
  CHECK(max_abs_diff(prob.b, b2) == 0.0);

  spec.rank = 0;
  CHECK_THROWS_AS(hotk::gen_lowrank_problem(spec, l), hotk::ValueError);
  spec.rank = 5;
  CHECK_THROWS_AS(hotk::gen_lowrank_problem(spec, l), hotk::ValueError);
}

TEST_CASE("relative error metric") {
  DenseTensor ref = DenseTensor::from_real({2, 2}, {3.0, 0.0, 4.0, 0.0});
  DenseTensor x = DenseTensor::from_real({2, 2}, {3.0, 1.0, 4.0, -1.0});
  CHECK(hotk::metric_re(x, ref) == doctest::Approx(std::sqrt(2.0) / 5.0).epsilon(1e-14));
  CHECK(hotk::metric_re(ref, ref) == 0.0);

  DenseTensor xs = hotk::scale(x, 7.5);
  DenseTensor rs = hotk::scale(ref, 7.5);
  CHECK(hotk::metric_re(xs, rs) == doctest::Approx(hotk::metric_re(x, ref)).epsilon(1e-12));

  DenseTensor zero = DenseTensor::zeros({2, 2});
  CHECK_THROWS_AS(hotk::metric_re(x, zero), hotk::ValueError);
  DenseTensor wrong = DenseTensor::zeros({2, 3});
  CHECK_THROWS_AS(hotk::metric_re(wrong, ref), hotk::ValueError);
}

TEST_CASE("psnr metric") {
  DenseTensor ref = DenseTensor::from_real({2, 2}, {1.0, 1.0, 1.0, 1.0});
  DenseTensor x = DenseTensor::from_real({2, 2}, {1.0, 0.5, 1.0, 1.0});
  CHECK(hotk::metric_psnr(x, ref) == doctest::Approx(12.0412).epsilon(1e-4));
  CHECK(std::isinf(hotk::metric_psnr(ref, ref)));
  CHECK(hotk::metric_psnr(ref, ref) > 0.0);
  DenseTensor wrong = DenseTensor::zeros({2, 3});
  CHECK_THROWS_AS(hotk::metric_psnr(wrong, ref), hotk::ValueError);
}

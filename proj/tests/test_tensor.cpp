#include <doctest.h>

#include <cmath>

#include "hotk/tensor.hpp"
#include "test_util.hpp"

using namespace hotk;
using hotk::test::max_abs_diff;
using hotk::test::random_tensor;

TEST_CASE("construction and validation") {
  auto t = DenseTensor::zeros({2, 3, 4});
  CHECK(t.order() == 3);
  CHECK(t.numel() == 24);
  CHECK_FALSE(t.is_complex());

  CHECK_THROWS_AS(DenseTensor::zeros({5}), ValueError);
  CHECK_THROWS_AS(DenseTensor::zeros({2, 0, 3}), ValueError);
  CHECK_THROWS_AS(DenseTensor::zeros({2, 2, 2, 2, 2, 2, 2, 2, 2}), ValueError);
  CHECK_THROWS_AS(DenseTensor::from_real({2, 2}, {1.0, 2.0, 3.0}), ShapeError);
}

TEST_CASE("column-major indexing, first index fastest") {
  auto t = DenseTensor::from_real({2, 3}, {1, 2, 3, 4, 5, 6});
  CHECK(t.at({0, 0}) == Complex(1, 0));
  CHECK(t.at({1, 0}) == Complex(2, 0));
  CHECK(t.at({0, 1}) == Complex(3, 0));
  CHECK(t.at({1, 2}) == Complex(6, 0));
  CHECK_THROWS_AS(t.at({2, 0}), ValueError);
  CHECK_THROWS_AS(t.at({0, 0, 0}), ShapeError);

  t.set({0, 2}, 9.0);
  CHECK(t.at({0, 2}) == Complex(9, 0));
  CHECK_THROWS_AS(t.set({0, 0}, Complex(0, 1)), ValueError);
}

TEST_CASE("real/complex promotion in elementwise ops") {
  auto a = DenseTensor::from_real({2, 2}, {1, 2, 3, 4});
  auto b = DenseTensor::from_complex({2, 2}, {{0, 1}, {1, 0}, {2, -1}, {0, 0}});

  auto h = hadamard(a, b);
  CHECK(h.is_complex());
  CHECK(h.at({0, 0}) == Complex(0, 1));
  CHECK(h.at({1, 0}) == Complex(2, 0));
  CHECK(h.at({0, 1}) == Complex(6, -3));

  auto hr = hadamard(a, a);
  CHECK_FALSE(hr.is_complex());
  CHECK(hr.at({1, 1}) == Complex(16, 0));

  CHECK_THROWS_AS(hadamard(a, DenseTensor::zeros({2, 3})), ShapeError);

  auto s = sub(add(a, a), a);
  CHECK(max_abs_diff(s, a) == 0.0);
}

TEST_CASE("norms and inner product") {
  auto a = DenseTensor::from_complex({2, 2}, {{3, 4}, {0, 0}, {0, 0}, {1, 0}});
  CHECK(norm_l1(a) == doctest::Approx(6.0));
  CHECK(norm_fro(a) == doctest::Approx(std::sqrt(26.0)));
  CHECK(norm_inf(a) == doctest::Approx(5.0));

  // <A, B> conjugates the second argument.
  auto e1 = DenseTensor::from_complex({2, 2}, {{0, 1}, {0, 0}, {0, 0}, {0, 0}});
  auto e2 = DenseTensor::from_complex({2, 2}, {{1, 0}, {0, 0}, {0, 0}, {0, 0}});
  CHECK(inner(e1, e2) == Complex(0, 1));
  CHECK(inner(e2, e1) == Complex(0, -1));
  CHECK(inner(a, a).real() == doctest::Approx(26.0));
  CHECK(inner(a, a).imag() == doctest::Approx(0.0));

  auto r = random_tensor({3, 2, 4}, false, 7);
  CHECK(inner(r, r).real() == doctest::Approx(norm_fro(r) * norm_fro(r)));
}

TEST_CASE("realified drops small imaginary residue") {
  auto a = DenseTensor::from_complex({2, 2}, {{1, 1e-12}, {2, 0}, {3, 0}, {4, -1e-12}});
  auto r = a.realified(1e-8, true);
  CHECK_FALSE(r.is_complex());
  CHECK(r.at({0, 0}) == Complex(1, 0));

  auto big = DenseTensor::from_complex({2, 2}, {{1, 0.5}, {2, 0}, {3, 0}, {4, 0}});
  CHECK_THROWS_AS(big.realified(1e-8, true), NumericError);
  auto kept = big.realified(1e-8, false);
  CHECK(kept.is_complex());

  // Exact zero tensor realifies cleanly.
  auto z = DenseTensor::zeros({2, 2}, true);
  CHECK_FALSE(z.realified(1e-8, true).is_complex());
}

TEST_CASE("frontal slices and slabs") {
  // A(:,:,1) = [1 3; 2 4], A(:,:,2) = [5 7; 6 8]
  auto a = DenseTensor::from_real({2, 2, 2}, {1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(slice_count(a) == 2);
  auto s1 = frontal_slice(a, 1);
  CHECK(s1.order() == 2);
  CHECK(s1.at({0, 0}) == Complex(5, 0));
  CHECK(s1.at({1, 1}) == Complex(8, 0));

  auto rows = horizontal_slab(a, {1});
  CHECK(rows.dims() == Dims{1, 2, 2});
  CHECK(rows.at({0, 0, 0}) == Complex(2, 0));
  CHECK(rows.at({0, 1, 1}) == Complex(8, 0));

  std::vector<std::size_t> cols{0};
  auto lat = lateral_slab(a, cols);
  CHECK(lat.dims() == Dims{2, 1, 2});
  CHECK(lat.at({1, 0, 1}) == Complex(6, 0));

  CHECK_THROWS_AS(horizontal_slab(a, {5}), ValueError);
  CHECK_THROWS_AS(horizontal_slab(a, {1, 1}), ValueError);
  CHECK_THROWS_AS(horizontal_slab(a, {1, 0}), ValueError);
}

TEST_CASE("unfold stacks last-mode slices along mode 1") {
  auto a = DenseTensor::from_real({2, 2, 2}, {1, 2, 3, 4, 5, 6, 7, 8});
  auto u = unfold(a);
  CHECK(u.dims() == Dims{4, 2});
  // rows 1..2 from slice 1, rows 3..4 from slice 2
  CHECK(u.at({0, 0}) == Complex(1, 0));
  CHECK(u.at({1, 0}) == Complex(2, 0));
  CHECK(u.at({2, 0}) == Complex(5, 0));
  CHECK(u.at({3, 1}) == Complex(8, 0));

  auto back = fold(u, {2, 2, 2});
  CHECK(max_abs_diff(back, a) == 0.0);

  CHECK_THROWS_AS(unfold(DenseTensor::zeros({2, 2})), ValueError);
  CHECK_THROWS_AS(fold(u, {3, 2, 2}), ShapeError);
}

TEST_CASE("fold/unfold round trip on higher orders") {
  for (bool cx : {false, true}) {
    auto a = random_tensor({3, 2, 2, 4}, cx, 11);
    CHECK(max_abs_diff(fold(unfold(a), a.dims()), a) == 0.0);
    auto b = random_tensor({2, 3, 2, 2, 3}, cx, 13);
    CHECK(max_abs_diff(fold(unfold(b), b.dims()), b) == 0.0);
  }
}

TEST_CASE("circ of a 1x1x3 tube is the 3x3 circulant") {
  auto a = DenseTensor::from_real({1, 1, 3}, {1, 2, 3});
  auto c = circ(a);
  CHECK(c.dims() == Dims{3, 3});
  // [a c b; b a c; c b a]
  std::vector<double> expect = {1, 2, 3, 3, 1, 2, 2, 3, 1};  // column-major
  for (std::size_t i = 0; i < 9; ++i) CHECK(c.flat(i) == Complex(expect[i], 0));
}

TEST_CASE("circ block structure on an order-3 tensor") {
  auto a = random_tensor({2, 3, 4}, false, 5);
  auto c = circ(a);
  CHECK(c.dims() == Dims{8, 12});
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t col = 0; col < 4; ++col) {
      const std::size_t s = (r + 4 - col) % 4;
      for (std::size_t i1 = 0; i1 < 2; ++i1)
        for (std::size_t i2 = 0; i2 < 3; ++i2)
          CHECK(c.at({r * 2 + i1, col * 3 + i2}) == a.at({i1, i2, s}));
    }
}

TEST_CASE("circ_inv recovers the tensor and checks structure") {
  for (bool cx : {false, true}) {
    auto a = random_tensor({2, 3, 2, 5}, cx, 17);
    auto c = circ(a);
    auto back = circ_inv(c, 5);
    CHECK(back.dims() == a.dims());
    CHECK(max_abs_diff(back, a) == 0.0);
  }

  auto a = random_tensor({2, 2, 3}, false, 19);
  auto c = circ(a);
  c.set({0, 2}, c.at({0, 2}) + Complex(1e-6, 0));
  CHECK_THROWS_AS(circ_inv(c, 3), StructureError);
  // Within tolerance the perturbation is accepted.
  auto c2 = circ(a);
  c2.set({0, 2}, c2.at({0, 2}) + Complex(1e-13, 0));
  CHECK_NOTHROW(circ_inv(c2, 3));

  CHECK_THROWS_AS(circ_inv(DenseTensor::zeros({4, 4}), 3), ShapeError);
}

TEST_CASE("circ_pow composes circ") {
  auto a = random_tensor({2, 2, 3, 2}, false, 23);
  CHECK(max_abs_diff(circ_pow(a, 0), a) == 0.0);
  CHECK(max_abs_diff(circ_pow(a, 1), circ(a)) == 0.0);
  CHECK(max_abs_diff(circ_pow(a, 2), circ(circ(a))) == 0.0);
  // Undo two applications: first peel the order-3 block count, then the order-4 one.
  auto undone = circ_inv(circ_inv(circ_pow(a, 2), 3), 2);
  CHECK(max_abs_diff(undone, a) == 0.0);

  // A single slice along the last mode makes circ a no-op on content.
  auto one = random_tensor({2, 3, 1}, false, 29);
  auto c = circ(one);
  CHECK(c.dims() == Dims{2, 3});
  for (std::size_t i = 0; i < 6; ++i) CHECK(c.flat(i) == one.flat(i));
}

TEST_CASE("mode_unfold matches the standard matricization") {
  // X(:,:,1) = [1 3 5; 2 4 6], X(:,:,2) = [7 9 11; 8 10 12]
  auto x = DenseTensor::from_real({2, 3, 2}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});

  auto m1 = mode_unfold(x, 0);
  CHECK(m1.dims() == Dims{2, 6});
  std::vector<double> e1 = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  for (std::size_t i = 0; i < 12; ++i) CHECK(m1.flat(i) == Complex(e1[i], 0));

  auto m2 = mode_unfold(x, 1);
  CHECK(m2.dims() == Dims{3, 4});
  // columns: (i1,i3) = (1,1),(2,1),(1,2),(2,2)
  std::vector<double> e2 = {1, 3, 5, 2, 4, 6, 7, 9, 11, 8, 10, 12};
  for (std::size_t i = 0; i < 12; ++i) CHECK(m2.flat(i) == Complex(e2[i], 0));

  auto m3 = mode_unfold(x, 2);
  CHECK(m3.dims() == Dims{2, 6});
  std::vector<double> e3 = {1, 7, 2, 8, 3, 9, 4, 10, 5, 11, 6, 12};
  for (std::size_t i = 0; i < 12; ++i) CHECK(m3.flat(i) == Complex(e3[i], 0));
}

TEST_CASE("mode_k_product against a naive loop") {
  auto a = random_tensor({3, 2, 4, 2}, false, 31);
  Eigen::MatrixXd u = Eigen::MatrixXd::Random(4, 4);
  auto b = mode_k_product(a, u, 2);
  CHECK(b.dims() == a.dims());
  for (std::size_t i1 = 0; i1 < 3; ++i1)
    for (std::size_t i2 = 0; i2 < 2; ++i2)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i4 = 0; i4 < 2; ++i4) {
          Complex s = 0.0;
          for (std::size_t t = 0; t < 4; ++t)
            s += u(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(t)) *
                 a.at({i1, i2, t, i4});
          CHECK(std::abs(b.at({i1, i2, j, i4}) - s) < 1e-12);
        }

  // Complex matrix promotes a real tensor.
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Random(2, 2);
  auto bc = mode_k_product(a, w, 3);
  CHECK(bc.is_complex());
  for (std::size_t i1 = 0; i1 < 3; ++i1)
    for (std::size_t i2 = 0; i2 < 2; ++i2)
      for (std::size_t i3 = 0; i3 < 4; ++i3)
        for (std::size_t j = 0; j < 2; ++j) {
          Complex s = 0.0;
          for (std::size_t t = 0; t < 2; ++t)
            s += w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(t)) *
                 a.at({i1, i2, i3, t});
          CHECK(std::abs(bc.at({i1, i2, i3, j}) - s) < 1e-12);
        }

  CHECK_THROWS_AS(mode_k_product(a, u, 3), ShapeError);
}

TEST_CASE("mode_k_product on a matrix reproduces two-sided multiplication") {
  auto a = random_tensor({3, 4}, false, 37);
  Eigen::MatrixXd p = Eigen::MatrixXd::Random(3, 3);
  Eigen::MatrixXd q = Eigen::MatrixXd::Random(4, 4);
  auto b = mode_k_product(mode_k_product(a, p, 0), q, 1);
  Eigen::MatrixXd am(3, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      am(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a.at({i, j}).real();
  Eigen::MatrixXd expect = p * am * q.transpose();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::abs(b.at({i, j}).real() -
                     expect(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) < 1e-12);
}

TEST_CASE("zero_pad_mode pads on the trailing side") {
  auto a = DenseTensor::from_real({2, 2}, {1, 2, 3, 4});
  auto p = zero_pad_mode(a, 0, 4);
  CHECK(p.dims() == Dims{4, 2});
  CHECK(p.at({0, 0}) == Complex(1, 0));
  CHECK(p.at({1, 1}) == Complex(4, 0));
  CHECK(p.at({2, 0}) == Complex(0, 0));
  CHECK(p.at({3, 1}) == Complex(0, 0));
  CHECK_THROWS_AS(zero_pad_mode(a, 0, 1), ValueError);

  auto t = random_tensor({2, 3, 2}, true, 41);
  auto pt = zero_pad_mode(t, 2, 5);
  CHECK(pt.dims() == Dims{2, 3, 5});
  for (std::size_t i1 = 0; i1 < 2; ++i1)
    for (std::size_t i2 = 0; i2 < 3; ++i2) {
      for (std::size_t i3 = 0; i3 < 2; ++i3) CHECK(pt.at({i1, i2, i3}) == t.at({i1, i2, i3}));
      for (std::size_t i3 = 2; i3 < 5; ++i3) CHECK(pt.at({i1, i2, i3}) == Complex(0, 0));
    }
}

TEST_CASE("axpy accumulates in place") {
  auto y = DenseTensor::from_real({2, 2}, {1, 1, 1, 1});
  auto x = DenseTensor::from_real({2, 2}, {1, 2, 3, 4});
  axpy_inplace(y, 0.5, x);
  CHECK(y.at({0, 0}) == Complex(1.5, 0));
  CHECK(y.at({1, 1}) == Complex(3.0, 0));
  CHECK_THROWS_AS(axpy_inplace(y, 1.0, DenseTensor::zeros({2, 2}, true)), ValueError);
}

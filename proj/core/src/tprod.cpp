#include "hotk/tprod.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace hotk {

namespace {

void check_facewise_shapes(const DenseTensor& a, const DenseTensor& b) {
  if (a.order() != b.order())
    throw ShapeError("facewise: operand orders differ");
  if (a.dim(1) != b.dim(0))
    throw ShapeError("facewise: inner dims differ (" + std::to_string(a.dim(1)) + " vs " +
                     std::to_string(b.dim(0)) + ")");
  for (std::size_t k = 2; k < a.order(); ++k)
    if (a.dim(k) != b.dim(k)) throw ShapeError("facewise: higher-mode dims differ");
}

Dims product_dims(const DenseTensor& a, const DenseTensor& b) {
  Dims d;
  d.push_back(a.dim(0));
  d.push_back(b.dim(1));
  for (std::size_t k = 2; k < a.order(); ++k) d.push_back(a.dim(k));
  return d;
}

}  // namespace

DenseTensor bdiag(const DenseTensor& a) {
  const std::size_t j_count = slice_count(a);
  const std::size_t n1 = a.dim(0), n2 = a.dim(1);
  DenseTensor out = DenseTensor::zeros({j_count * n1, j_count * n2}, a.is_complex());
  if (a.is_complex()) {
    auto o = slice_complex(out, 0);
    for (std::size_t j = 0; j < j_count; ++j)
      o.block(static_cast<Eigen::Index>(j * n1), static_cast<Eigen::Index>(j * n2),
              static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2)) = slice_complex(a, j);
  } else {
    auto o = slice_real(out, 0);
    for (std::size_t j = 0; j < j_count; ++j)
      o.block(static_cast<Eigen::Index>(j * n1), static_cast<Eigen::Index>(j * n2),
              static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2)) = slice_real(a, j);
  }
  return out;
}

DenseTensor facewise(const DenseTensor& a, const DenseTensor& b) {
  check_facewise_shapes(a, b);
  const std::size_t j_count = slice_count(a);
  if (!a.is_complex() && !b.is_complex()) {
    DenseTensor out = DenseTensor::zeros(product_dims(a, b), false);
    for (std::size_t j = 0; j < j_count; ++j)
      slice_real(out, j) = slice_real(a, j) * slice_real(b, j);
    return out;
  }
  DenseTensor ac = a.to_complex();
  DenseTensor bc = b.to_complex();
  DenseTensor out = DenseTensor::zeros(product_dims(a, b), true);
  for (std::size_t j = 0; j < j_count; ++j)
    slice_complex(out, j) = slice_complex(ac, j) * slice_complex(bc, j);
  return out;
}

DenseTensor tprod(const DenseTensor& a, const DenseTensor& x, const LinearTransform& l) {
  check_facewise_shapes(a, x);
  if (!l.compatible_with(a)) throw ShapeError("tprod: transform does not match operands");
  const bool want_real = !a.is_complex() && !x.is_complex() && l.real_preserving();
  DenseTensor c = l.inverse(facewise(l.forward(a), l.forward(x)));
  return want_real ? real_part(c) : c;
}

DenseTensor conj_transpose(const DenseTensor& a, const LinearTransform& l) {
  if (!l.compatible_with(a)) throw ShapeError("conj_transpose: transform does not match operand");
  const bool want_real = !a.is_complex() && l.real_preserving();
  DenseTensor af = l.forward(a);
  Dims dims = af.dims();
  std::swap(dims[0], dims[1]);
  DenseTensor out = DenseTensor::zeros(dims, af.is_complex());
  const std::size_t j_count = slice_count(af);
  if (af.is_complex()) {
    for (std::size_t j = 0; j < j_count; ++j)
      slice_complex(out, j) = slice_complex(af, j).adjoint();
  } else {
    for (std::size_t j = 0; j < j_count; ++j)
      slice_real(out, j) = slice_real(af, j).transpose();
  }
  DenseTensor r = l.inverse(out);
  return want_real ? real_part(r) : r;
}

DenseTensor identity_tensor(std::size_t n, const Dims& mode_dims, const LinearTransform& l) {
  if (n == 0) throw ValueError("identity_tensor: n must be positive");
  if (mode_dims != l.mode_dims())
    throw ShapeError("identity_tensor: higher dims do not match transform");
  Dims dims{n, n};
  for (std::size_t d : mode_dims) dims.push_back(d);
  DenseTensor hat = DenseTensor::zeros(dims, false);
  const std::size_t j_count = slice_count(hat);
  for (std::size_t j = 0; j < j_count; ++j)
    slice_real(hat, j).setIdentity();
  return l.inverse(hat, Realify::Soft);
}

DenseTensor classical_tprod(const DenseTensor& a, const DenseTensor& x) {
  check_facewise_shapes(a, x);
  if (a.order() == 2) {
    if (!a.is_complex() && !x.is_complex()) {
      DenseTensor out = DenseTensor::zeros(product_dims(a, x), false);
      slice_real(out, 0) = slice_real(a, 0) * slice_real(x, 0);
      return out;
    }
    DenseTensor ac = a.to_complex();
    DenseTensor xc = x.to_complex();
    DenseTensor out = DenseTensor::zeros(product_dims(a, x), true);
    slice_complex(out, 0) = slice_complex(ac, 0) * slice_complex(xc, 0);
    return out;
  }
  DenseTensor r = classical_tprod(circ(a), unfold(x));
  Dims target;
  target.push_back(a.dim(0));
  target.push_back(x.dim(1));
  for (std::size_t k = 2; k < a.order(); ++k) target.push_back(a.dim(k));
  return fold(r, target);
}

namespace {

// Rotates each singular vector pair so the first significant component of
// the left vector is real and nonnegative; the phase moves into V, keeping
// U diag(s) V^H unchanged.  Fixes the gauge so factors are reproducible.
template <class Mat>
void fix_gauge(Mat& u, Mat& v, Eigen::Index paired) {
  using Scalar = typename Mat::Scalar;
  auto fix_col = [](Mat& m, Eigen::Index col, Mat* partner, Eigen::Index pcol) {
    const double colmax = m.col(col).cwiseAbs().maxCoeff();
    if (colmax == 0.0) return;
    Eigen::Index anchor = -1;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (std::abs(m(r, col)) > 1e-12 * colmax) {
        anchor = r;
        break;
      }
    if (anchor < 0) return;
    const Scalar val = m(anchor, col);
    const double mag = std::abs(val);
    const Scalar phase = val / Scalar(mag);
    m.col(col) *= Scalar(1.0) / phase;
    if (partner != nullptr) partner->col(pcol) *= Scalar(1.0) / phase;
  };
  for (Eigen::Index i = 0; i < u.cols(); ++i)
    fix_col(u, i, i < paired ? &v : nullptr, i);
  for (Eigen::Index i = paired; i < v.cols(); ++i)
    fix_col(v, i, nullptr, 0);
}

}  // namespace

TsvdFactors tsvd(const DenseTensor& x, const LinearTransform& l) {
  if (!l.compatible_with(x)) throw ShapeError("tsvd: transform does not match tensor");
  DenseTensor xf = l.forward(x);
  const std::size_t n1 = x.dim(0), n2 = x.dim(1);
  Dims ud{n1, n1}, sd{n1, n2}, vd{n2, n2};
  for (std::size_t k = 2; k < x.order(); ++k) {
    ud.push_back(x.dim(k));
    sd.push_back(x.dim(k));
    vd.push_back(x.dim(k));
  }
  TsvdFactors f;
  const bool cx = xf.is_complex();
  DenseTensor uf = DenseTensor::zeros(ud, cx);
  DenseTensor sf = DenseTensor::zeros(sd, cx);
  DenseTensor vf = DenseTensor::zeros(vd, cx);
  const std::size_t j_count = slice_count(xf);
  const Eigen::Index r = static_cast<Eigen::Index>(std::min(n1, n2));
  if (cx) {
    for (std::size_t j = 0; j < j_count; ++j) {
      Eigen::MatrixXcd m = slice_complex(xf, j);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Eigen::MatrixXcd u = svd.matrixU();
      Eigen::MatrixXcd v = svd.matrixV();
      fix_gauge(u, v, r);
      slice_complex(uf, j) = u;
      slice_complex(vf, j) = v;
      auto s = slice_complex(sf, j);
      for (Eigen::Index i = 0; i < r; ++i) s(i, i) = svd.singularValues()(i);
    }
  } else {
    for (std::size_t j = 0; j < j_count; ++j) {
      Eigen::MatrixXd m = slice_real(xf, j);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Eigen::MatrixXd u = svd.matrixU();
      Eigen::MatrixXd v = svd.matrixV();
      fix_gauge(u, v, r);
      slice_real(uf, j) = u;
      slice_real(vf, j) = v;
      auto s = slice_real(sf, j);
      for (Eigen::Index i = 0; i < r; ++i) s(i, i) = svd.singularValues()(i);
    }
  }
  f.u = l.inverse(uf, Realify::Soft);
  f.s = l.inverse(sf, Realify::Soft);
  f.v = l.inverse(vf, Realify::Soft);
  return f;
}

std::size_t tsvd_rank(const TsvdFactors& f, double tol) {
  const std::size_t r = std::min(f.s.dim(0), f.s.dim(1));
  const std::size_t j_count = slice_count(f.s);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < r; ++i) {
    double tube2 = 0.0;
    for (std::size_t j = 0; j < j_count; ++j) {
      const std::size_t off = j * f.s.dim(0) * f.s.dim(1) + i * f.s.dim(0) + i;
      tube2 += std::norm(f.s.flat(off));
    }
    if (std::sqrt(tube2) > tol) ++rank;
  }
  return rank;
}

std::size_t tsvd_rank(const DenseTensor& x, const LinearTransform& l, double tol) {
  return tsvd_rank(tsvd(x, l), tol);
}

DenseTensor tsvt(const DenseTensor& z, double tau, const LinearTransform& l) {
  if (tau < 0.0) throw ValueError("tsvt: threshold must be nonnegative");
  if (!l.compatible_with(z)) throw ShapeError("tsvt: transform does not match tensor");
  const bool want_real = !z.is_complex() && l.real_preserving();
  DenseTensor zf = l.forward(z);
  const std::size_t j_count = slice_count(zf);
  if (zf.is_complex()) {
    for (std::size_t j = 0; j < j_count; ++j) {
      Eigen::MatrixXcd m = slice_complex(zf, j);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
      Eigen::VectorXd s = svd.singularValues();
      for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::max(s(i) - tau, 0.0);
      slice_complex(zf, j) = svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
    }
  } else {
    for (std::size_t j = 0; j < j_count; ++j) {
      Eigen::MatrixXd m = slice_real(zf, j);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
      Eigen::VectorXd s = svd.singularValues();
      for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::max(s(i) - tau, 0.0);
      slice_real(zf, j) = svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
    }
  }
  DenseTensor r = l.inverse(zf);
  return want_real ? real_part(r) : r;
}

}  // namespace hotk

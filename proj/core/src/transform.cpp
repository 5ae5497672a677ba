#include "hotk/transform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hotk/hot1.hpp"

namespace hotk {

namespace {

Eigen::MatrixXcd dft_matrix(std::size_t n) {
  Eigen::MatrixXcd f(n, n);
  const double base = -2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t e = (j * k) % n;  // reduce the phase before evaluating
      f(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          std::polar(1.0, base * static_cast<double>(e));
    }
  return f;
}

Eigen::MatrixXd dct_matrix(std::size_t n) {
  // Orthogonal DCT-II: C(j,k) = a_j cos(pi*(2k+1)*j/(2n)).
  Eigen::MatrixXd c(n, n);
  const double pi = std::numbers::pi;
  for (std::size_t j = 0; j < n; ++j) {
    const double aj = j == 0 ? std::sqrt(1.0 / static_cast<double>(n))
                             : std::sqrt(2.0 / static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k)
      c(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          aj * std::cos(pi * (2.0 * static_cast<double>(k) + 1.0) * static_cast<double>(j) /
                        (2.0 * static_cast<double>(n)));
  }
  return c;
}

}  // namespace

void LinearTransform::finalize(const char* what, bool exact_rho) {
  if (mats_.size() != mode_dims_.size()) throw ValueError("transform: matrix count mismatch");
  rho_modes_.clear();
  invs_.clear();
  rmats_.clear();
  rinvs_.clear();
  real_ = true;
  double rho = 1.0;
  for (std::size_t i = 0; i < mats_.size(); ++i) {
    const Eigen::MatrixXcd& u = mats_[i];
    const auto n = static_cast<Eigen::Index>(mode_dims_[i]);
    if (u.rows() != n || u.cols() != n) {
      std::ostringstream os;
      os << what << ": matrix " << i << " is " << u.rows() << "x" << u.cols()
         << ", expected " << n << "x" << n;
      throw ShapeError(os.str());
    }
    double rho_k = u.squaredNorm() / static_cast<double>(n);
    if (exact_rho) rho_k = std::round(rho_k);
    Eigen::MatrixXcd gram = u * u.adjoint();
    const double tol = 1e-10 * std::max(1.0, rho_k);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) {
        const Complex expect = r == c ? Complex(rho_k, 0.0) : Complex(0.0, 0.0);
        if (std::abs(gram(r, c) - expect) > tol) {
          std::ostringstream os;
          os << what << ": matrix " << i << " is not a scaled unitary; U*U^H deviates by "
             << std::abs(gram(r, c) - expect) << " at (" << r << "," << c << ")";
          throw NumericError(os.str());
        }
      }
    if (rho_k <= 0.0) throw NumericError(std::string(what) + ": matrix is singular");
    rho_modes_.push_back(rho_k);
    rho *= rho_k;
    invs_.push_back(u.adjoint() / rho_k);
    if (u.imag().cwiseAbs().maxCoeff() != 0.0) real_ = false;
  }
  rho_ = rho;
  if (real_) {
    for (std::size_t i = 0; i < mats_.size(); ++i) {
      rmats_.push_back(mats_[i].real());
      rinvs_.push_back(invs_[i].real());
    }
  }
}

LinearTransform LinearTransform::identity(Dims mode_dims) {
  LinearTransform t;
  t.mode_dims_ = std::move(mode_dims);
  for (std::size_t n : t.mode_dims_)
    t.mats_.push_back(Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n),
                                                 static_cast<Eigen::Index>(n)));
  t.finalize("identity transform", true);
  t.identity_ = true;
  t.selector_ = "identity";
  return t;
}

LinearTransform LinearTransform::dft(Dims mode_dims) {
  LinearTransform t;
  t.mode_dims_ = std::move(mode_dims);
  for (std::size_t n : t.mode_dims_) t.mats_.push_back(dft_matrix(n));
  t.finalize("dft transform", true);
  t.selector_ = "dft";
  return t;
}

LinearTransform LinearTransform::dft_unitary(Dims mode_dims) {
  LinearTransform t;
  t.mode_dims_ = std::move(mode_dims);
  for (std::size_t n : t.mode_dims_)
    t.mats_.push_back(dft_matrix(n) / std::sqrt(static_cast<double>(n)));
  t.finalize("unitary dft transform", true);
  t.selector_ = "dft-unitary";
  return t;
}

LinearTransform LinearTransform::dct(Dims mode_dims) {
  LinearTransform t;
  t.mode_dims_ = std::move(mode_dims);
  for (std::size_t n : t.mode_dims_) t.mats_.push_back(dct_matrix(n).cast<Complex>());
  t.finalize("dct transform", true);
  t.selector_ = "dct";
  return t;
}

LinearTransform LinearTransform::custom(std::vector<Eigen::MatrixXcd> mats) {
  LinearTransform t;
  for (const auto& m : mats) {
    if (m.rows() != m.cols()) throw ShapeError("custom transform: matrices must be square");
    t.mode_dims_.push_back(static_cast<std::size_t>(m.rows()));
  }
  t.mats_ = std::move(mats);
  t.finalize("custom transform", false);
  t.selector_ = "custom";
  return t;
}

double LinearTransform::rho_mode(std::size_t i) const {
  if (i >= rho_modes_.size()) throw ValueError("transform mode index out of range");
  return rho_modes_[i];
}

const Eigen::MatrixXcd& LinearTransform::matrix(std::size_t i) const {
  if (i >= mats_.size()) throw ValueError("transform mode index out of range");
  return mats_[i];
}

const Eigen::MatrixXcd& LinearTransform::inverse_matrix(std::size_t i) const {
  if (i >= invs_.size()) throw ValueError("transform mode index out of range");
  return invs_[i];
}

bool LinearTransform::compatible_with(const DenseTensor& a) const {
  if (a.order() != mode_dims_.size() + 2) return false;
  for (std::size_t i = 0; i < mode_dims_.size(); ++i)
    if (a.dim(i + 2) != mode_dims_[i]) return false;
  return true;
}

void LinearTransform::require_compatible(const DenseTensor& a) const {
  if (!compatible_with(a)) {
    std::ostringstream os;
    os << "transform over " << mode_dims_.size() + 2
       << " modes does not match tensor of order " << a.order();
    throw ShapeError(os.str());
  }
}

DenseTensor LinearTransform::forward(const DenseTensor& a) const {
  require_compatible(a);
  if (identity_ || mode_dims_.empty()) return a;
  DenseTensor out = a;
  if (real_ && !a.is_complex()) {
    for (std::size_t i = 0; i < rmats_.size(); ++i) out = mode_k_product(out, rmats_[i], i + 2);
  } else {
    for (std::size_t i = 0; i < mats_.size(); ++i) out = mode_k_product(out, mats_[i], i + 2);
  }
  return out;
}

DenseTensor LinearTransform::inverse(const DenseTensor& a, Realify realify, double tol) const {
  require_compatible(a);
  DenseTensor out = a;
  if (!identity_ && !mode_dims_.empty()) {
    if (real_ && !a.is_complex()) {
      for (std::size_t i = 0; i < rinvs_.size(); ++i) out = mode_k_product(out, rinvs_[i], i + 2);
    } else {
      for (std::size_t i = 0; i < invs_.size(); ++i) out = mode_k_product(out, invs_[i], i + 2);
    }
  }
  if (out.is_complex() && realify != Realify::None)
    out = out.realified(tol, realify == Realify::Strict);
  return out;
}

double LinearTransform::verify_rho(double tol) const {
  double rho = 1.0;
  for (std::size_t i = 0; i < mats_.size(); ++i) {
    const Eigen::MatrixXcd& u = mats_[i];
    const Eigen::Index n = u.rows();
    const double rho_k = rho_modes_[i];
    Eigen::MatrixXcd gram = u * u.adjoint();
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) {
        const Complex expect = r == c ? Complex(rho_k, 0.0) : Complex(0.0, 0.0);
        if (std::abs(gram(r, c) - expect) > tol * std::max(1.0, rho_k))
          throw NumericError("transform matrix lost scaled unitarity");
      }
    rho *= rho_k;
  }
  return rho;
}

Dims higher_mode_dims(const DenseTensor& a) {
  Dims d;
  for (std::size_t k = 2; k < a.order(); ++k) d.push_back(a.dim(k));
  return d;
}

LinearTransform parse_transform(const std::string& selector, const Dims& mode_dims) {
  if (selector == "identity") return LinearTransform::identity(mode_dims);
  if (selector == "dft") return LinearTransform::dft(mode_dims);
  if (selector == "dft-unitary") return LinearTransform::dft_unitary(mode_dims);
  if (selector == "dct") return LinearTransform::dct(mode_dims);
  if (selector.rfind("custom:", 0) == 0) {
    const std::string dir = selector.substr(7);
    if (dir.empty()) throw ValueError("custom transform selector needs a directory path");
    std::vector<Eigen::MatrixXcd> mats;
    for (std::size_t i = 0; i < mode_dims.size(); ++i) {
      const std::string path = dir + "/U" + std::to_string(i + 3) + ".hot1";
      DenseTensor m = read_hot1(path);
      if (m.order() != 2) throw FormatError("custom transform matrix must be order 2: " + path);
      const std::size_t n = m.dim(0);
      if (m.dim(1) != n || n != mode_dims[i])
        throw ShapeError("custom transform matrix has wrong size: " + path);
      Eigen::MatrixXcd u(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m.at({r, c});
      mats.push_back(std::move(u));
    }
    return LinearTransform::custom(std::move(mats));
  }
  throw ValueError("unknown transform selector: " + selector);
}

}  // namespace hotk

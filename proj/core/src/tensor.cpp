#include "hotk/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace hotk {

namespace {

std::string dims_to_string(const Dims& d) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) os << "x";
    os << d[i];
  }
  os << ")";
  return os.str();
}

constexpr std::size_t kMaxOrder = 8;

}  // namespace

std::size_t checked_numel(const Dims& dims) {
  std::size_t n = 1;
  const std::size_t cap = std::numeric_limits<std::size_t>::max() / 16;
  for (std::size_t d : dims) {
    if (d == 0) throw ValueError("tensor dimension must be positive");
    if (n > cap / d) throw ValueError("tensor dimensions overflow addressable size");
    n *= d;
  }
  return n;
}

void DenseTensor::validate_dims() const {
  if (dims_.size() < 2) throw ValueError("tensor order must be at least 2");
  if (dims_.size() > kMaxOrder) throw ValueError("tensor order above 8 is unsupported");
  checked_numel(dims_);
}

DenseTensor DenseTensor::zeros(Dims dims, bool complex) {
  DenseTensor t;
  t.dims_ = std::move(dims);
  t.complex_ = complex;
  t.validate_dims();
  const std::size_t n = checked_numel(t.dims_);
  if (complex)
    t.cdata_.assign(n, Complex(0.0, 0.0));
  else
    t.rdata_.assign(n, 0.0);
  return t;
}

DenseTensor DenseTensor::from_real(Dims dims, std::vector<double> values) {
  DenseTensor t;
  t.dims_ = std::move(dims);
  t.complex_ = false;
  t.validate_dims();
  if (values.size() != checked_numel(t.dims_))
    throw ShapeError("value count does not match dims " + dims_to_string(t.dims_));
  t.rdata_ = std::move(values);
  return t;
}

DenseTensor DenseTensor::from_complex(Dims dims, std::vector<Complex> values) {
  DenseTensor t;
  t.dims_ = std::move(dims);
  t.complex_ = true;
  t.validate_dims();
  if (values.size() != checked_numel(t.dims_))
    throw ShapeError("value count does not match dims " + dims_to_string(t.dims_));
  t.cdata_ = std::move(values);
  return t;
}

std::size_t DenseTensor::dim(std::size_t mode) const {
  if (mode >= dims_.size()) throw ValueError("mode index out of range");
  return dims_[mode];
}

std::size_t DenseTensor::numel() const {
  return complex_ ? cdata_.size() : rdata_.size();
}

std::span<double> DenseTensor::rdata() {
  if (complex_) throw ValueError("tensor is complex; no real storage view");
  return rdata_;
}

std::span<const double> DenseTensor::rdata() const {
  if (complex_) throw ValueError("tensor is complex; no real storage view");
  return rdata_;
}

std::span<Complex> DenseTensor::cdata() {
  if (!complex_) throw ValueError("tensor is real; no complex storage view");
  return cdata_;
}

std::span<const Complex> DenseTensor::cdata() const {
  if (!complex_) throw ValueError("tensor is real; no complex storage view");
  return cdata_;
}

std::size_t DenseTensor::linear_index(std::span<const std::size_t> idx) const {
  if (idx.size() != dims_.size()) throw ShapeError("index order does not match tensor order");
  std::size_t lin = 0;
  std::size_t stride = 1;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (idx[k] >= dims_[k]) throw ValueError("index out of range in mode " + std::to_string(k + 1));
    lin += idx[k] * stride;
    stride *= dims_[k];
  }
  return lin;
}

Complex DenseTensor::flat(std::size_t i) const {
  if (i >= numel()) throw ValueError("flat index out of range");
  return complex_ ? cdata_[i] : Complex(rdata_[i], 0.0);
}

Complex DenseTensor::at(std::initializer_list<std::size_t> idx) const {
  return at(std::span<const std::size_t>(idx.begin(), idx.size()));
}

Complex DenseTensor::at(std::span<const std::size_t> idx) const {
  return flat(linear_index(idx));
}

void DenseTensor::set_flat(std::size_t i, Complex v) {
  if (i >= numel()) throw ValueError("flat index out of range");
  if (complex_) {
    cdata_[i] = v;
  } else {
    if (v.imag() != 0.0) throw ValueError("cannot store a complex value in a real tensor");
    rdata_[i] = v.real();
  }
}

void DenseTensor::set(std::initializer_list<std::size_t> idx, Complex v) {
  set_flat(linear_index(std::span<const std::size_t>(idx.begin(), idx.size())), v);
}

DenseTensor DenseTensor::to_complex() const {
  if (complex_) return *this;
  DenseTensor t;
  t.dims_ = dims_;
  t.complex_ = true;
  t.cdata_.resize(rdata_.size());
  for (std::size_t i = 0; i < rdata_.size(); ++i) t.cdata_[i] = Complex(rdata_[i], 0.0);
  return t;
}

DenseTensor DenseTensor::realified(double tol, bool strict) const {
  if (!complex_) return *this;
  double imag2 = 0.0;
  double full2 = 0.0;
  for (const Complex& v : cdata_) {
    imag2 += v.imag() * v.imag();
    full2 += std::norm(v);
  }
  const double imag_norm = std::sqrt(imag2);
  const double full_norm = std::sqrt(full2);
  if (imag_norm <= tol * full_norm) {
    DenseTensor t;
    t.dims_ = dims_;
    t.complex_ = false;
    t.rdata_.resize(cdata_.size());
    for (std::size_t i = 0; i < cdata_.size(); ++i) t.rdata_[i] = cdata_[i].real();
    return t;
  }
  if (strict) {
    std::ostringstream os;
    os << "imaginary residue too large to drop: |imag| = " << imag_norm << ", |full| = "
       << full_norm << ", tol = " << tol;
    throw NumericError(os.str());
  }
  return *this;
}

// ---- shape helpers ----

bool same_dims(const DenseTensor& a, const DenseTensor& b) {
  return a.dims() == b.dims();
}

std::size_t slice_count(const DenseTensor& a) {
  std::size_t n = 1;
  for (std::size_t k = 2; k < a.order(); ++k) n *= a.dim(k);
  return n;
}

Eigen::Map<const Eigen::MatrixXd> slice_real(const DenseTensor& a, std::size_t j) {
  if (j >= slice_count(a)) throw ValueError("frontal slice index out of range");
  const std::size_t n1 = a.dim(0), n2 = a.dim(1);
  return {a.rdata().data() + j * n1 * n2, static_cast<Eigen::Index>(n1),
          static_cast<Eigen::Index>(n2)};
}

Eigen::Map<Eigen::MatrixXd> slice_real(DenseTensor& a, std::size_t j) {
  if (j >= slice_count(a)) throw ValueError("frontal slice index out of range");
  const std::size_t n1 = a.dim(0), n2 = a.dim(1);
  return {a.rdata().data() + j * n1 * n2, static_cast<Eigen::Index>(n1),
          static_cast<Eigen::Index>(n2)};
}

Eigen::Map<const Eigen::MatrixXcd> slice_complex(const DenseTensor& a, std::size_t j) {
  if (j >= slice_count(a)) throw ValueError("frontal slice index out of range");
  const std::size_t n1 = a.dim(0), n2 = a.dim(1);
  return {a.cdata().data() + j * n1 * n2, static_cast<Eigen::Index>(n1),
          static_cast<Eigen::Index>(n2)};
}

Eigen::Map<Eigen::MatrixXcd> slice_complex(DenseTensor& a, std::size_t j) {
  if (j >= slice_count(a)) throw ValueError("frontal slice index out of range");
  const std::size_t n1 = a.dim(0), n2 = a.dim(1);
  return {a.cdata().data() + j * n1 * n2, static_cast<Eigen::Index>(n1),
          static_cast<Eigen::Index>(n2)};
}

// ---- elementwise algebra ----

namespace {

template <class FR, class FC>
DenseTensor binary_elementwise(const DenseTensor& a, const DenseTensor& b, FR fr, FC fc,
                               const char* what) {
  if (!same_dims(a, b))
    throw ShapeError(std::string(what) + ": dims " + dims_to_string(a.dims()) + " vs " +
                     dims_to_string(b.dims()));
  if (!a.is_complex() && !b.is_complex()) {
    DenseTensor out = DenseTensor::zeros(a.dims(), false);
    auto ra = a.rdata();
    auto rb = b.rdata();
    auto ro = out.rdata();
    for (std::size_t i = 0; i < ro.size(); ++i) ro[i] = fr(ra[i], rb[i]);
    return out;
  }
  DenseTensor out = DenseTensor::zeros(a.dims(), true);
  auto co = out.cdata();
  for (std::size_t i = 0; i < co.size(); ++i) co[i] = fc(a.flat(i), b.flat(i));
  return out;
}

}  // namespace

DenseTensor hadamard(const DenseTensor& a, const DenseTensor& b) {
  return binary_elementwise(
      a, b, [](double x, double y) { return x * y; },
      [](Complex x, Complex y) { return x * y; }, "hadamard");
}

DenseTensor add(const DenseTensor& a, const DenseTensor& b) {
  return binary_elementwise(
      a, b, [](double x, double y) { return x + y; },
      [](Complex x, Complex y) { return x + y; }, "add");
}

DenseTensor sub(const DenseTensor& a, const DenseTensor& b) {
  return binary_elementwise(
      a, b, [](double x, double y) { return x - y; },
      [](Complex x, Complex y) { return x - y; }, "sub");
}

DenseTensor scale(const DenseTensor& a, double s) {
  DenseTensor out = a;
  if (out.is_complex()) {
    for (Complex& v : out.cdata()) v *= s;
  } else {
    for (double& v : out.rdata()) v *= s;
  }
  return out;
}

DenseTensor scale(const DenseTensor& a, Complex s) {
  if (s.imag() == 0.0 && !a.is_complex()) return scale(a, s.real());
  DenseTensor out = a.to_complex();
  for (Complex& v : out.cdata()) v *= s;
  return out;
}

DenseTensor conj(const DenseTensor& a) {
  if (!a.is_complex()) return a;
  DenseTensor out = a;
  for (Complex& v : out.cdata()) v = std::conj(v);
  return out;
}

DenseTensor real_part(const DenseTensor& a) {
  if (!a.is_complex()) return a;
  DenseTensor out = DenseTensor::zeros(a.dims(), false);
  auto src = a.cdata();
  auto dst = out.rdata();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i].real();
  return out;
}

void axpy_inplace(DenseTensor& y, double alpha, const DenseTensor& x) {
  if (!same_dims(y, x)) throw ShapeError("axpy: dims mismatch");
  if (y.is_complex() != x.is_complex()) throw ValueError("axpy: real/complex flags differ");
  if (y.is_complex()) {
    auto cy = y.cdata();
    auto cx = x.cdata();
    for (std::size_t i = 0; i < cy.size(); ++i) cy[i] += alpha * cx[i];
  } else {
    auto ry = y.rdata();
    auto rx = x.rdata();
    for (std::size_t i = 0; i < ry.size(); ++i) ry[i] += alpha * rx[i];
  }
}

// ---- reductions ----

double norm_l1(const DenseTensor& a) {
  double s = 0.0;
  if (a.is_complex()) {
    for (const Complex& v : a.cdata()) s += std::abs(v);
  } else {
    for (double v : a.rdata()) s += std::abs(v);
  }
  return s;
}

double norm_fro(const DenseTensor& a) {
  double s = 0.0;
  if (a.is_complex()) {
    for (const Complex& v : a.cdata()) s += std::norm(v);
  } else {
    for (double v : a.rdata()) s += v * v;
  }
  return std::sqrt(s);
}

double norm_inf(const DenseTensor& a) {
  double s = 0.0;
  if (a.is_complex()) {
    for (const Complex& v : a.cdata()) s = std::max(s, std::abs(v));
  } else {
    for (double v : a.rdata()) s = std::max(s, std::abs(v));
  }
  return s;
}

Complex inner(const DenseTensor& a, const DenseTensor& b) {
  if (!same_dims(a, b)) throw ShapeError("inner: dims mismatch");
  if (!a.is_complex() && !b.is_complex()) {
    double s = 0.0;
    auto ra = a.rdata();
    auto rb = b.rdata();
    for (std::size_t i = 0; i < ra.size(); ++i) s += ra[i] * rb[i];
    return {s, 0.0};
  }
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < a.numel(); ++i) s += a.flat(i) * std::conj(b.flat(i));
  return s;
}

// ---- slicing ----

DenseTensor frontal_slice(const DenseTensor& a, std::size_t j) {
  if (j >= slice_count(a)) throw ValueError("frontal slice index out of range");
  const std::size_t n1 = a.dim(0), n2 = a.dim(1);
  DenseTensor out = DenseTensor::zeros({n1, n2}, a.is_complex());
  const std::size_t off = j * n1 * n2;
  if (a.is_complex()) {
    auto src = a.cdata();
    auto dst = out.cdata();
    std::copy(src.begin() + off, src.begin() + off + n1 * n2, dst.begin());
  } else {
    auto src = a.rdata();
    auto dst = out.rdata();
    std::copy(src.begin() + off, src.begin() + off + n1 * n2, dst.begin());
  }
  return out;
}

namespace {

void check_selection(std::span<const std::size_t> sel, std::size_t bound, const char* what) {
  if (sel.empty()) throw ValueError(std::string(what) + ": empty index selection");
  for (std::size_t i = 0; i < sel.size(); ++i) {
    if (sel[i] >= bound) throw ValueError(std::string(what) + ": index out of range");
    if (i > 0 && sel[i] <= sel[i - 1])
      throw ValueError(std::string(what) + ": indices must be strictly increasing");
  }
}

template <class T>
void gather_mode(std::span<const T> src, std::span<T> dst, std::size_t inner, std::size_t len,
                 std::size_t outer, std::span<const std::size_t> sel) {
  // src viewed as inner x len x outer; dst as inner x sel.size() x outer
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t s = 0; s < sel.size(); ++s) {
      const T* from = src.data() + (o * len + sel[s]) * inner;
      T* to = dst.data() + (o * sel.size() + s) * inner;
      std::copy(from, from + inner, to);
    }
  }
}

DenseTensor slab_mode(const DenseTensor& a, std::span<const std::size_t> sel, std::size_t mode,
                      const char* what) {
  check_selection(sel, a.dim(mode), what);
  Dims dims = a.dims();
  dims[mode] = sel.size();
  DenseTensor out = DenseTensor::zeros(dims, a.is_complex());
  std::size_t inner = 1;
  for (std::size_t k = 0; k < mode; ++k) inner *= a.dim(k);
  std::size_t outer = 1;
  for (std::size_t k = mode + 1; k < a.order(); ++k) outer *= a.dim(k);
  if (a.is_complex())
    gather_mode<Complex>(a.cdata(), out.cdata(), inner, a.dim(mode), outer, sel);
  else
    gather_mode<double>(a.rdata(), out.rdata(), inner, a.dim(mode), outer, sel);
  return out;
}

}  // namespace

DenseTensor horizontal_slab(const DenseTensor& a, std::span<const std::size_t> rows) {
  return slab_mode(a, rows, 0, "horizontal slab");
}

DenseTensor horizontal_slab(const DenseTensor& a, std::initializer_list<std::size_t> rows) {
  return horizontal_slab(a, std::span<const std::size_t>(rows.begin(), rows.size()));
}

DenseTensor lateral_slab(const DenseTensor& a, std::span<const std::size_t> cols) {
  return slab_mode(a, cols, 1, "lateral slab");
}

// ---- block-circulant machinery ----

namespace {

template <class T>
void unfold_copy(std::span<const T> src, std::span<T> dst, std::size_t n1, std::size_t n2,
                 std::size_t rest, std::size_t nm) {
  // src: n1 x n2 x rest x nm;  dst: (nm*n1) x n2 x rest
  const std::size_t big1 = nm * n1;
  for (std::size_t s = 0; s < nm; ++s)
    for (std::size_t t = 0; t < rest; ++t)
      for (std::size_t i2 = 0; i2 < n2; ++i2) {
        const T* from = src.data() + n1 * (i2 + n2 * (t + rest * s));
        T* to = dst.data() + s * n1 + big1 * (i2 + n2 * t);
        std::copy(from, from + n1, to);
      }
}

}  // namespace

DenseTensor unfold(const DenseTensor& a) {
  if (a.order() < 3) throw ValueError("unfold requires order >= 3");
  const std::size_t n1 = a.dim(0), n2 = a.dim(1), nm = a.dim(a.order() - 1);
  std::size_t rest = 1;
  for (std::size_t k = 2; k + 1 < a.order(); ++k) rest *= a.dim(k);
  Dims out_dims;
  out_dims.push_back(n1 * nm);
  out_dims.push_back(n2);
  for (std::size_t k = 2; k + 1 < a.order(); ++k) out_dims.push_back(a.dim(k));
  DenseTensor out = DenseTensor::zeros(out_dims, a.is_complex());
  if (a.is_complex())
    unfold_copy<Complex>(a.cdata(), out.cdata(), n1, n2, rest, nm);
  else
    unfold_copy<double>(a.rdata(), out.rdata(), n1, n2, rest, nm);
  return out;
}

DenseTensor fold(const DenseTensor& a, const Dims& target) {
  if (target.size() < 3) throw ValueError("fold target must have order >= 3");
  if (a.order() != target.size() - 1) throw ShapeError("fold: input order does not match target");
  const std::size_t n1 = target[0], n2 = target[1], nm = target[target.size() - 1];
  if (a.dim(0) != n1 * nm || a.dim(1) != n2) throw ShapeError("fold: leading dims inconsistent");
  std::size_t rest = 1;
  for (std::size_t k = 2; k + 1 < target.size(); ++k) {
    if (a.dim(k) != target[k]) throw ShapeError("fold: trailing dims inconsistent");
    rest *= target[k];
  }
  DenseTensor out = DenseTensor::zeros(target, a.is_complex());
  const std::size_t big1 = nm * n1;
  auto copy_all = [&](auto src, auto dst) {
    for (std::size_t s = 0; s < nm; ++s)
      for (std::size_t t = 0; t < rest; ++t)
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
          auto from = src.data() + s * n1 + big1 * (i2 + n2 * t);
          auto to = dst.data() + n1 * (i2 + n2 * (t + rest * s));
          std::copy(from, from + n1, to);
        }
  };
  if (a.is_complex())
    copy_all(a.cdata(), out.cdata());
  else
    copy_all(a.rdata(), out.rdata());
  return out;
}

namespace {

template <class T>
void circ_copy(std::span<const T> src, std::span<T> dst, std::size_t n1, std::size_t n2,
               std::size_t rest, std::size_t nm) {
  const std::size_t big1 = nm * n1;
  const std::size_t big2 = nm * n2;
  for (std::size_t t = 0; t < rest; ++t)
    for (std::size_t c = 0; c < nm; ++c)
      for (std::size_t r = 0; r < nm; ++r) {
        const std::size_t s = (r + nm - c) % nm;
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
          const T* from = src.data() + n1 * (i2 + n2 * (t + rest * s));
          T* to = dst.data() + r * n1 + big1 * ((c * n2 + i2) + big2 * t);
          std::copy(from, from + n1, to);
        }
      }
}

}  // namespace

DenseTensor circ(const DenseTensor& a) {
  if (a.order() < 3) throw ValueError("circ requires order >= 3");
  const std::size_t n1 = a.dim(0), n2 = a.dim(1), nm = a.dim(a.order() - 1);
  std::size_t rest = 1;
  for (std::size_t k = 2; k + 1 < a.order(); ++k) rest *= a.dim(k);
  Dims out_dims;
  out_dims.push_back(nm * n1);
  out_dims.push_back(nm * n2);
  for (std::size_t k = 2; k + 1 < a.order(); ++k) out_dims.push_back(a.dim(k));
  DenseTensor out = DenseTensor::zeros(out_dims, a.is_complex());
  if (a.is_complex())
    circ_copy<Complex>(a.cdata(), out.cdata(), n1, n2, rest, nm);
  else
    circ_copy<double>(a.rdata(), out.rdata(), n1, n2, rest, nm);
  return out;
}

DenseTensor circ_pow(const DenseTensor& a, std::size_t k) {
  DenseTensor out = a;
  for (std::size_t i = 0; i < k; ++i) out = circ(out);
  return out;
}

DenseTensor circ_inv(const DenseTensor& a, std::size_t blocks, double tol) {
  if (blocks == 0) throw ValueError("circ_inv: block count must be positive");
  if (a.dim(0) % blocks != 0 || a.dim(1) % blocks != 0)
    throw ShapeError("circ_inv: leading dims not divisible by block count");
  const std::size_t n1 = a.dim(0) / blocks, n2 = a.dim(1) / blocks;
  std::size_t rest = 1;
  for (std::size_t k = 2; k < a.order(); ++k) rest *= a.dim(k);
  Dims out_dims;
  out_dims.push_back(n1);
  out_dims.push_back(n2);
  for (std::size_t k = 2; k < a.order(); ++k) out_dims.push_back(a.dim(k));
  out_dims.push_back(blocks);
  if (out_dims.size() > kMaxOrder) throw ValueError("circ_inv: result order above 8");
  DenseTensor out = DenseTensor::zeros(out_dims, a.is_complex());

  const std::size_t big1 = a.dim(0);
  auto src_entry = [&](std::size_t r, std::size_t c, std::size_t i1, std::size_t i2,
                       std::size_t t) -> Complex {
    return a.flat(r * n1 + i1 + big1 * ((c * n2 + i2) + a.dim(1) * t));
  };
  // First block column becomes the last-mode slices.
  for (std::size_t s = 0; s < blocks; ++s)
    for (std::size_t t = 0; t < rest; ++t)
      for (std::size_t i2 = 0; i2 < n2; ++i2)
        for (std::size_t i1 = 0; i1 < n1; ++i1) {
          const Complex v = src_entry(s, 0, i1, i2, t);
          out.set_flat(i1 + n1 * (i2 + n2 * (t + rest * s)), v);
        }
  // Remaining block columns must repeat the first one cyclically.
  for (std::size_t c = 1; c < blocks; ++c)
    for (std::size_t r = 0; r < blocks; ++r) {
      const std::size_t s = (r + blocks - c) % blocks;
      for (std::size_t t = 0; t < rest; ++t)
        for (std::size_t i2 = 0; i2 < n2; ++i2)
          for (std::size_t i1 = 0; i1 < n1; ++i1) {
            const Complex got = src_entry(r, c, i1, i2, t);
            const Complex ref = src_entry(s, 0, i1, i2, t);
            if (std::abs(got - ref) > tol) {
              std::ostringstream os;
              os << "circ_inv: input is not block-circulant at block (" << r + 1 << "," << c + 1
                 << "), entry (" << i1 + 1 << "," << i2 + 1 << "), |delta| = "
                 << std::abs(got - ref);
              throw StructureError(os.str());
            }
          }
    }
  return out;
}

// ---- mode-k operations ----

DenseTensor mode_unfold(const DenseTensor& a, std::size_t mode) {
  if (mode >= a.order()) throw ValueError("mode index out of range");
  const std::size_t nk = a.dim(mode);
  std::size_t inner = 1;
  for (std::size_t k = 0; k < mode; ++k) inner *= a.dim(k);
  const std::size_t outer = a.numel() / (inner * nk);
  DenseTensor out = DenseTensor::zeros({nk, a.numel() / nk}, a.is_complex());
  auto run = [&](auto src, auto dst) {
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t ik = 0; ik < nk; ++ik)
        for (std::size_t in = 0; in < inner; ++in)
          dst[ik + nk * (in + inner * o)] = src[in + inner * (ik + nk * o)];
  };
  if (a.is_complex())
    run(a.cdata(), out.cdata());
  else
    run(a.rdata(), out.rdata());
  return out;
}

namespace {

template <class SrcScalar, class USc, class OutScalar>
void mode_product_run(const DenseTensor& a,
                      const Eigen::Matrix<USc, Eigen::Dynamic, Eigen::Dynamic>& u,
                      std::size_t mode, std::span<const SrcScalar> src,
                      std::span<OutScalar> dst) {
  using MatIn = Eigen::Matrix<SrcScalar, Eigen::Dynamic, Eigen::Dynamic>;
  using MatOut = Eigen::Matrix<OutScalar, Eigen::Dynamic, Eigen::Dynamic>;
  const std::size_t nk = a.dim(mode);
  const std::size_t q = static_cast<std::size_t>(u.rows());
  std::size_t inner = 1;
  for (std::size_t k = 0; k < mode; ++k) inner *= a.dim(k);
  const std::size_t outer = a.numel() / (inner * nk);
  for (std::size_t o = 0; o < outer; ++o) {
    Eigen::Map<const MatIn> blk(src.data() + o * inner * nk, inner, nk);
    Eigen::Map<MatOut> res(dst.data() + o * inner * q, inner, q);
    res = (blk.template cast<OutScalar>() * u.transpose().template cast<OutScalar>());
  }
}

}  // namespace

DenseTensor mode_k_product(const DenseTensor& a, const Eigen::MatrixXd& u, std::size_t mode) {
  if (mode >= a.order()) throw ValueError("mode index out of range");
  if (static_cast<std::size_t>(u.cols()) != a.dim(mode))
    throw ShapeError("mode_k_product: matrix columns do not match mode extent");
  Dims dims = a.dims();
  dims[mode] = static_cast<std::size_t>(u.rows());
  DenseTensor out = DenseTensor::zeros(dims, a.is_complex());
  if (a.is_complex())
    mode_product_run<Complex, double, Complex>(a, u, mode, a.cdata(), out.cdata());
  else
    mode_product_run<double, double, double>(a, u, mode, a.rdata(), out.rdata());
  return out;
}

DenseTensor mode_k_product(const DenseTensor& a, const Eigen::MatrixXcd& u, std::size_t mode) {
  if (mode >= a.order()) throw ValueError("mode index out of range");
  if (static_cast<std::size_t>(u.cols()) != a.dim(mode))
    throw ShapeError("mode_k_product: matrix columns do not match mode extent");
  Dims dims = a.dims();
  dims[mode] = static_cast<std::size_t>(u.rows());
  DenseTensor out = DenseTensor::zeros(dims, true);
  if (a.is_complex())
    mode_product_run<Complex, Complex, Complex>(a, u, mode, a.cdata(), out.cdata());
  else
    mode_product_run<double, Complex, Complex>(a, u, mode, a.rdata(), out.cdata());
  return out;
}

// ---- padding ----

DenseTensor zero_pad_mode(const DenseTensor& a, std::size_t mode, std::size_t new_len) {
  if (mode >= a.order()) throw ValueError("mode index out of range");
  if (new_len < a.dim(mode)) throw ValueError("zero_pad_mode: new length below current extent");
  if (new_len == a.dim(mode)) return a;
  Dims dims = a.dims();
  dims[mode] = new_len;
  DenseTensor out = DenseTensor::zeros(dims, a.is_complex());
  std::size_t inner = 1;
  for (std::size_t k = 0; k < mode; ++k) inner *= a.dim(k);
  const std::size_t len = a.dim(mode);
  const std::size_t outer = a.numel() / (inner * len);
  auto run = [&](auto src, auto dst) {
    for (std::size_t o = 0; o < outer; ++o) {
      auto from = src.data() + o * inner * len;
      auto to = dst.data() + o * inner * new_len;
      std::copy(from, from + inner * len, to);
    }
  };
  if (a.is_complex())
    run(a.cdata(), out.cdata());
  else
    run(a.rdata(), out.rdata());
  return out;
}

}  // namespace hotk

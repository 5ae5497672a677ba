#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hotk/errors.hpp"

namespace hotk {

using Complex = std::complex<double>;
using Dims = std::vector<std::size_t>;

// Dense tensor of order m >= 2 with double-precision scalars.
// Storage is a flat column-major array (first index fastest).  Real versus
// complex is a runtime flag: a real tensor holds only doubles, operations
// promote to complex when any operand is complex.
class DenseTensor {
public:
  DenseTensor() = default;

  static DenseTensor zeros(Dims dims, bool complex = false);
  static DenseTensor from_real(Dims dims, std::vector<double> values);
  static DenseTensor from_complex(Dims dims, std::vector<Complex> values);

  bool empty() const { return dims_.empty(); }
  std::size_t order() const { return dims_.size(); }
  const Dims& dims() const { return dims_; }
  std::size_t dim(std::size_t mode) const;  // 0-based mode
  std::size_t numel() const;
  bool is_complex() const { return complex_; }

  std::span<double> rdata();
  std::span<const double> rdata() const;
  std::span<Complex> cdata();
  std::span<const Complex> cdata() const;

  std::size_t linear_index(std::span<const std::size_t> idx) const;

  // Promoting reads; a real tensor reports zero imaginary part.
  Complex flat(std::size_t i) const;
  Complex at(std::initializer_list<std::size_t> idx) const;
  Complex at(std::span<const std::size_t> idx) const;

  // Promoting writes; storing a value with nonzero imaginary part into a
  // real tensor throws ValueError.
  void set_flat(std::size_t i, Complex v);
  void set(std::initializer_list<std::size_t> idx, Complex v);

  DenseTensor to_complex() const;

  // Drops the imaginary part when its Frobenius norm is below tol times the
  // norm of the whole tensor.  With strict=true a larger residue throws
  // NumericError; otherwise the tensor is returned unchanged.
  DenseTensor realified(double tol, bool strict) const;

private:
  Dims dims_;
  bool complex_ = false;
  std::vector<double> rdata_;
  std::vector<Complex> cdata_;

  void validate_dims() const;
};

// ---- shape helpers ----

bool same_dims(const DenseTensor& a, const DenseTensor& b);
std::size_t checked_numel(const Dims& dims);

// Number of frontal slices, i.e. the product of dims 3..m (indices 2..m-1).
std::size_t slice_count(const DenseTensor& a);

// Eigen views of frontal slice j (0-based); slices are contiguous
// column-major n1 x n2 blocks.
Eigen::Map<const Eigen::MatrixXd> slice_real(const DenseTensor& a, std::size_t j);
Eigen::Map<Eigen::MatrixXd> slice_real(DenseTensor& a, std::size_t j);
Eigen::Map<const Eigen::MatrixXcd> slice_complex(const DenseTensor& a, std::size_t j);
Eigen::Map<Eigen::MatrixXcd> slice_complex(DenseTensor& a, std::size_t j);

// ---- elementwise algebra ----

DenseTensor hadamard(const DenseTensor& a, const DenseTensor& b);
DenseTensor add(const DenseTensor& a, const DenseTensor& b);
DenseTensor sub(const DenseTensor& a, const DenseTensor& b);
DenseTensor scale(const DenseTensor& a, double s);
DenseTensor scale(const DenseTensor& a, Complex s);
DenseTensor conj(const DenseTensor& a);
// Real parts of all entries as a real tensor; real inputs pass through.
DenseTensor real_part(const DenseTensor& a);

// y += alpha * x; shapes and real/complex flags must match.
void axpy_inplace(DenseTensor& y, double alpha, const DenseTensor& x);

// ---- reductions (fixed sequential summation order) ----

double norm_l1(const DenseTensor& a);
double norm_fro(const DenseTensor& a);
double norm_inf(const DenseTensor& a);

// <A, B> = sum_i a_i * conj(b_i)
Complex inner(const DenseTensor& a, const DenseTensor& b);

// ---- slicing ----

// Frontal slice as an order-2 tensor.
DenseTensor frontal_slice(const DenseTensor& a, std::size_t j);

// Horizontal slab A(rows): selects mode-1 indices, keeping their order.
DenseTensor horizontal_slab(const DenseTensor& a, std::span<const std::size_t> rows);
DenseTensor horizontal_slab(const DenseTensor& a, std::initializer_list<std::size_t> rows);

// Lateral slab: selects mode-2 indices.
DenseTensor lateral_slab(const DenseTensor& a, std::span<const std::size_t> cols);

// ---- block-circulant machinery ----

// Stacks the last-mode slices along mode 1:
// n1 x ... x nm  ->  (n1*nm) x n2 x ... x n_{m-1}.  Requires order >= 3.
DenseTensor unfold(const DenseTensor& a);

// Inverse of unfold for the given target dims.
DenseTensor fold(const DenseTensor& a, const Dims& target);

// Block-circulant arrangement of the last-mode slices:
// block (r, c) of the nm x nm grid is slice ((r - c) mod nm).
// n1 x ... x nm  ->  (nm*n1) x (nm*n2) x n3 x ... x n_{m-1}.  Order >= 3.
DenseTensor circ(const DenseTensor& a);

// circ applied k times (k >= 0; k = 0 is the identity).
DenseTensor circ_pow(const DenseTensor& a, std::size_t k);

// Inverse of circ: reads the first block column back into last-mode slices
// and verifies the circulant structure entrywise within tol.
DenseTensor circ_inv(const DenseTensor& a, std::size_t blocks, double tol = 1e-12);

// ---- mode-k operations ----

// Mode-k unfolding (0-based mode): n_k x (numel/n_k); columns run over the
// remaining indices in column-major order.
DenseTensor mode_unfold(const DenseTensor& a, std::size_t mode);

// Mode-k product: contracts mode k (0-based) with the rows of u, i.e.
// B(i1,..,j,..,im) = sum_t u(j, t) * A(i1,..,t,..,im).
DenseTensor mode_k_product(const DenseTensor& a, const Eigen::MatrixXd& u, std::size_t mode);
DenseTensor mode_k_product(const DenseTensor& a, const Eigen::MatrixXcd& u, std::size_t mode);

// ---- padding ----

// Zero-pads mode k (0-based) on the trailing side to new_len.
DenseTensor zero_pad_mode(const DenseTensor& a, std::size_t mode, std::size_t new_len);

}  // namespace hotk

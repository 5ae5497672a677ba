#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "hotk/tensor.hpp"

namespace hotk {

enum class Realify { None, Soft, Strict };

// Invertible linear map L applied to an order-m tensor as a chain of mode-k
// products with one square matrix per mode 3..m.  Every matrix U must be a
// scaled unitary, U * U^H = rho_k * I; the product of the per-mode constants
// is the constant rho, which satisfies
//   (U_{n_m} kron ... kron U_{n_3}) (U_{n_m} kron ... kron U_{n_3})^H = rho I.
// Inverses are U^H / rho_k, so no factorization is ever needed.
//
// A transform with no matrices is the trivial map for order-2 tensors.
class LinearTransform {
public:
  LinearTransform() = default;

  // Identity map for the given higher-mode dims; rho = 1.
  static LinearTransform identity(Dims mode_dims);
  // Unnormalized discrete Fourier matrices, F(j,k) = exp(-2*pi*i*j*k/n);
  // rho_k = n_k, rho = product of the higher-mode dims.
  static LinearTransform dft(Dims mode_dims);
  // Unitary DFT, F / sqrt(n); rho = 1.
  static LinearTransform dft_unitary(Dims mode_dims);
  // Orthogonal DCT-II; real matrices, rho = 1.
  static LinearTransform dct(Dims mode_dims);
  // User-provided matrices for modes 3..m, validated for scaled unitarity.
  static LinearTransform custom(std::vector<Eigen::MatrixXcd> mats);

  std::size_t mode_count() const { return mode_dims_.size(); }
  const Dims& mode_dims() const { return mode_dims_; }
  double rho() const { return rho_; }
  double rho_mode(std::size_t i) const;
  bool is_real() const { return real_; }
  bool is_identity() const { return identity_; }
  // True when products of real tensors under this transform are provably real:
  // real matrices, or the DFT pair via conjugate symmetry of the slices.
  bool real_preserving() const {
    return real_ || selector_ == "dft" || selector_ == "dft-unitary";
  }
  const std::string& selector() const { return selector_; }

  const Eigen::MatrixXcd& matrix(std::size_t i) const;
  const Eigen::MatrixXcd& inverse_matrix(std::size_t i) const;

  // True when the higher-mode dims of a match this transform.
  bool compatible_with(const DenseTensor& a) const;

  DenseTensor forward(const DenseTensor& a) const;
  DenseTensor inverse(const DenseTensor& a, Realify realify = Realify::None,
                      double tol = 1e-8) const;

  // Re-checks scaled unitarity of every matrix within tol and returns rho.
  double verify_rho(double tol = 1e-10) const;

private:
  Dims mode_dims_;
  std::vector<Eigen::MatrixXcd> mats_, invs_;
  std::vector<Eigen::MatrixXd> rmats_, rinvs_;  // populated when real_
  std::vector<double> rho_modes_;
  double rho_ = 1.0;
  bool real_ = true;
  bool identity_ = false;
  std::string selector_ = "identity";

  void finalize(const char* what, bool exact_rho);
  void require_compatible(const DenseTensor& a) const;
};

// Higher-mode dims of a tensor (dims 3..m), used to build matching transforms.
Dims higher_mode_dims(const DenseTensor& a);

// Builds a transform from a selector string:
//   identity | dft | dft-unitary | dct | custom:<dir>
// where <dir> holds one square order-2 tensor file per higher mode, named
// U3.hot1, U4.hot1, ...  (see read_hot1).
LinearTransform parse_transform(const std::string& selector, const Dims& mode_dims);

}  // namespace hotk

#pragma once

#include "hotk/tensor.hpp"
#include "hotk/transform.hpp"

namespace hotk {

// Block-diagonal matrix of the frontal slices, as an order-2 tensor of size
// (J*n1) x (J*n2) where J is the slice count.
DenseTensor bdiag(const DenseTensor& a);

// Slicewise matrix product: C^(j) = A^(j) * B^(j) for every frontal slice.
DenseTensor facewise(const DenseTensor& a, const DenseTensor& b);

// Tensor-tensor product under the transform L:
//   A *_L X = L^{-1}( L(A) facewise L(X) ).
// Real operands yield a real result (the inverse transform is realified).
DenseTensor tprod(const DenseTensor& a, const DenseTensor& x, const LinearTransform& l);

// Conjugate transpose under L: every transform-domain slice is replaced by
// its conjugate transpose.
DenseTensor conj_transpose(const DenseTensor& a, const LinearTransform& l);

// Identity element for *_L on n x n x (mode dims) tensors: every
// transform-domain frontal slice is the n x n identity matrix.
DenseTensor identity_tensor(std::size_t n, const Dims& mode_dims, const LinearTransform& l);

// Classical t-product evaluated by the recursive block-circulant formula,
//   A * X = fold(circ(A) * unfold(X)),
// bottoming out in a matrix product.  Equals tprod under the unnormalized
// DFT; kept as an independent reference path.
DenseTensor classical_tprod(const DenseTensor& a, const DenseTensor& x);

// Factors of X = U *_L S *_L V^H.  S is f-diagonal: every transform-domain
// frontal slice is diagonal with nonnegative entries sorted descending.
struct TsvdFactors {
  DenseTensor u;  // n1 x n1 x higher dims
  DenseTensor s;  // n1 x n2 x higher dims
  DenseTensor v;  // n2 x n2 x higher dims
};

TsvdFactors tsvd(const DenseTensor& x, const LinearTransform& l);

// Number of diagonal tubes of S with spatial-domain Frobenius norm above tol.
std::size_t tsvd_rank(const TsvdFactors& f, double tol = 1e-10);
std::size_t tsvd_rank(const DenseTensor& x, const LinearTransform& l, double tol = 1e-10);

// Singular value soft thresholding applied slicewise in the transform
// domain: singular values shrink by tau and clamp at zero.
DenseTensor tsvt(const DenseTensor& z, double tau, const LinearTransform& l);

}  // namespace hotk

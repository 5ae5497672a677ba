#pragma once

#include <cstddef>

#include "hotk/tensor.hpp"
#include "hotk/tprod.hpp"
#include "hotk/transform.hpp"

namespace hotk {

// Parameters of the regularizer lambda * (l1 norm)^p with p in 1..4.
struct ProxParams {
  int p = 1;
  double lambda = 0.0;
};

// Positive root g of  p*n*lambda*g^(p-1) + g = z1  for p in 2..4, computed in
// closed form with cancellation-free branches.  Returns 1 for p == 1, where the
// shrinkage threshold does not depend on the input.
double shrinkage_scale(double z1, int p, double lambda, std::size_t n);

// Soft threshold applied to every entry with the closed-form global threshold
// p*lambda*g^(p-1).  Complex entries keep their phase.  The scale count n
// defaults to the number of entries.
DenseTensor prox_l1p(const DenseTensor& z, const ProxParams& prm);
DenseTensor prox_l1p(const DenseTensor& z, const ProxParams& prm, std::size_t n);

// Choice of the entry count n used when the shrinkage acts on a factorization
// core: every entry of the core, or one per diagonal tube.
enum class NuclearN { CoreEntries, DiagTubes };

// Shrinkage of the singular structure: factorize, soft-threshold the core,
// remultiply.  p == 1 reduces to singular value shrinkage with threshold
// lambda.  Real inputs produce real outputs.
DenseTensor prox_nl1p(const DenseTensor& z, const ProxParams& prm, const LinearTransform& l,
                      NuclearN nconv = NuclearN::CoreEntries);
DenseTensor prox_nl1p(const DenseTensor& z, const ProxParams& prm, const LinearTransform& l,
                      std::size_t n);

enum class Regularizer { Elementwise, Nuclear };

// f(X) = lambda * R(X)^p + 0.5 * ||X||_F^2 where R is either the entrywise l1
// norm or the l1 norm of the factorization core.
struct Objective {
  Regularizer reg = Regularizer::Elementwise;
  int p = 1;
  double lambda = 0.0;
  NuclearN nuclear_n = NuclearN::CoreEntries;
};

double objective_value(const DenseTensor& x, const Objective& obj, const LinearTransform& l);

// Gradient of the convex conjugate of f, i.e. the prox of lambda * R^p at z.
DenseTensor gradient_conjugate(const DenseTensor& z, const Objective& obj,
                               const LinearTransform& l);

// f(xhat) - f(xk) - <zk, xhat - xk> with zk a subgradient of f at xk.
double bregman_distance(const DenseTensor& xhat, const DenseTensor& xk, const DenseTensor& zk,
                        const Objective& obj, const LinearTransform& l);

}  // namespace hotk

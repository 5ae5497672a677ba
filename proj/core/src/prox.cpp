#include "hotk/prox.hpp"

#include <cmath>
#include <string>

namespace hotk {

namespace {

void check_params(const ProxParams& prm) {
  if (prm.p < 1 || prm.p > 4)
    throw ValueError("prox: p must be in 1..4, got " + std::to_string(prm.p));
  if (!(prm.lambda >= 0.0)) throw ValueError("prox: lambda must be nonnegative");
}

DenseTensor soft_threshold(const DenseTensor& z, double tau) {
  if (z.is_complex()) {
    DenseTensor res = DenseTensor::zeros(z.dims(), true);
    auto src = z.cdata();
    auto dst = res.cdata();
    for (std::size_t i = 0; i < src.size(); ++i) {
      const double mag = std::abs(src[i]);
      dst[i] = mag > tau ? src[i] * ((mag - tau) / mag) : Complex(0.0);
    }
    return res;
  }
  DenseTensor res = DenseTensor::zeros(z.dims(), false);
  auto src = z.rdata();
  auto dst = res.rdata();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double v = src[i];
    if (v > tau)
      dst[i] = v - tau;
    else if (v < -tau)
      dst[i] = v + tau;
    else
      dst[i] = 0.0;
  }
  return res;
}

}  // namespace

double shrinkage_scale(double z1, int p, double lambda, std::size_t n) {
  if (p < 1 || p > 4) throw ValueError("shrinkage_scale: p must be in 1..4");
  if (!(z1 >= 0.0)) throw ValueError("shrinkage_scale: z1 must be nonnegative");
  if (!(lambda >= 0.0)) throw ValueError("shrinkage_scale: lambda must be nonnegative");
  if (n == 0) throw ValueError("shrinkage_scale: n must be positive");
  if (p == 1) return 1.0;
  if (lambda == 0.0) return z1;
  const double nl = static_cast<double>(n) * lambda;
  switch (p) {
    case 2:
      return z1 / (2.0 * nl + 1.0);
    case 3:
      // root of 3*nl*g^2 + g - z1, rationalized to avoid cancellation
      return 2.0 * z1 / (1.0 + std::sqrt(1.0 + 12.0 * nl * z1));
    default: {
      // root of 4*nl*g^3 + g - z1 via the depressed-cubic formula; the
      // second branch is rationalized because z1 - sqrt(delta) cancels
      const double delta = z1 * z1 + 1.0 / (27.0 * nl);
      const double r = z1 + std::sqrt(delta);
      const double u = r / (8.0 * nl);
      const double v = -1.0 / (216.0 * nl * nl * r);
      // the root lies in [0, z1]; roundoff in the near-cancelling sum can
      // produce a negative ulp at z1 = 0
      return std::max(std::cbrt(u) + std::cbrt(v), 0.0);
    }
  }
}

DenseTensor prox_l1p(const DenseTensor& z, const ProxParams& prm) {
  return prox_l1p(z, prm, z.numel());
}

DenseTensor prox_l1p(const DenseTensor& z, const ProxParams& prm, std::size_t n) {
  check_params(prm);
  if (n == 0) throw ValueError("prox: n must be positive");
  if (prm.lambda == 0.0) return z;
  const double g = shrinkage_scale(norm_l1(z), prm.p, prm.lambda, n);
  const double tau = prm.p * prm.lambda * std::pow(g, prm.p - 1);
  return soft_threshold(z, tau);
}

DenseTensor prox_nl1p(const DenseTensor& z, const ProxParams& prm, const LinearTransform& l,
                      NuclearN nconv) {
  check_params(prm);
  if (prm.p == 1) return tsvt(z, prm.lambda, l);
  // the factorization core has the same shape as z
  const std::size_t n =
      nconv == NuclearN::DiagTubes ? std::min(z.dim(0), z.dim(1)) : z.numel();
  return prox_nl1p(z, prm, l, n);
}

DenseTensor prox_nl1p(const DenseTensor& z, const ProxParams& prm, const LinearTransform& l,
                      std::size_t n) {
  check_params(prm);
  if (n == 0) throw ValueError("prox: n must be positive");
  if (prm.p == 1) return tsvt(z, prm.lambda, l);
  TsvdFactors f = tsvd(z, l);
  DenseTensor d = prox_l1p(f.s, prm, n);
  DenseTensor out = tprod(tprod(f.u, d, l), conj_transpose(f.v, l), l);
  if (!z.is_complex() && l.real_preserving() && out.is_complex()) out = real_part(out);
  return out;
}

double objective_value(const DenseTensor& x, const Objective& obj, const LinearTransform& l) {
  if (obj.p < 1 || obj.p > 4) throw ValueError("objective: p must be in 1..4");
  if (!(obj.lambda >= 0.0)) throw ValueError("objective: lambda must be nonnegative");
  const double fro = norm_fro(x);
  double r;
  if (obj.reg == Regularizer::Elementwise) {
    r = norm_l1(x);
  } else {
    r = norm_l1(tsvd(x, l).s);
  }
  return obj.lambda * std::pow(r, obj.p) + 0.5 * fro * fro;
}

DenseTensor gradient_conjugate(const DenseTensor& z, const Objective& obj,
                               const LinearTransform& l) {
  ProxParams prm{obj.p, obj.lambda};
  if (obj.reg == Regularizer::Elementwise) return prox_l1p(z, prm);
  return prox_nl1p(z, prm, l, obj.nuclear_n);
}

double bregman_distance(const DenseTensor& xhat, const DenseTensor& xk, const DenseTensor& zk,
                        const Objective& obj, const LinearTransform& l) {
  if (!same_dims(xhat, xk) || !same_dims(xk, zk))
    throw ShapeError("bregman_distance: operands must share dims");
  const double fh = objective_value(xhat, obj, l);
  const double fk = objective_value(xk, obj, l);
  return fh - fk - inner(sub(xhat, xk), zk).real();
}

}  // namespace hotk

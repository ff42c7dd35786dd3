#pragma once

#include <span>

#include "eigenpro/common.hpp"
#include "eigenpro/eigensolver.hpp"
#include "eigenpro/kernels.hpp"

namespace eigenpro {

/// P = I - sum_i w_i e_i e_i^T with w_i = 1 - tau * lambda_{k+1} / lambda_i,
/// kept in factored form (E, w). With exact eigenvectors and tau = 1 the top
/// k eigenvalues of P H all become lambda_{k+1}.
class LinearPreconditioner {
 public:
  /// Throws InvalidArgument for tau outside (0, 1] and NumericError when a
  /// weight would be negative (tail above some lambda_i).
  static LinearPreconditioner build(EigenSystem eigensystem, double tau);

  /// v - E diag(w) E^T v for a d x c block.
  Matrix apply(const Matrix& v) const;
  Vector apply(const Vector& v) const;

  const EigenSystem& eigensystem() const { return eigensystem_; }
  const Vector& weights() const { return weights_; }
  double tau() const { return tau_; }
  Index dim() const { return eigensystem_.dim(); }

 private:
  EigenSystem eigensystem_;
  Vector weights_;
  double tau_ = 1.0;
};

/// Kernel-space correction D = E Lambda^-1 (I - tau lambda_{k+1} Lambda^-1) E^T
/// used by the split update alpha_m -= eta g; alpha += eta D K_m^T g.
///
/// The eigensystem is on the covariance scale (eigenvalues of K/n), so
/// weights() = (1/lambda_i)(1 - tau lambda_{k+1}/lambda_i) on that scale.
/// The kernel matrix K itself has eigenvalues n * lambda_i; correction()
/// accounts for this by dividing by n = number of training points.
class KernelPreconditioner {
 public:
  static KernelPreconditioner build(EigenSystem eigensystem, double tau);

  /// D v for an n x c block.
  Matrix correction(const Matrix& v) const;

  const EigenSystem& eigensystem() const { return eigensystem_; }
  const Vector& weights() const { return weights_; }
  double tau() const { return tau_; }

 private:
  EigenSystem eigensystem_;
  Vector weights_;
  double tau_ = 1.0;
};

/// Finite-sample EigenPro kernel
///   k_EP(x, z) = k(x, z) - sum_i (lambda_i - lambda_{k+1}) e_i(x) e_i(z),
/// where e_i(x) = (1 / (lambda_i sqrt(n))) sum_j k(x, x_j) E(j, i) is the
/// Nystrom extension of the training-set eigenvectors (unit norm in L2 of
/// the empirical measure). `eigensystem` must come from (spec, X).
double eigenpro_kernel_eval(const EigenSystem& eigensystem, const KernelSpec& spec,
                            const Matrix& X, std::span<const double> x,
                            std::span<const double> z);

/// e_1(x) ... e_k(x) as used by eigenpro_kernel_eval.
Vector nystrom_eigenfunctions(const EigenSystem& eigensystem, const KernelSpec& spec,
                              const Matrix& X, std::span<const double> x);

}  // namespace eigenpro

#pragma once

#include <cstdint>

#include "eigenpro/common.hpp"
#include "eigenpro/eigensolver.hpp"
#include "eigenpro/preconditioner.hpp"

namespace eigenpro {

/// Linear: dimension term enters as ln(2 d / delta).
/// Kernel: intrinsic dimension enters as ln(8 d / delta).
enum class BoundKind { linear, kernel };

struct StepSizeBoundInputs {
  double lambda_top = 0.0;  // lambda_1 (plain SGD) or lambda_{k+1} (EigenPro)
  double kappa = 0.0;       // max |x|^2, or max k(x, x)
  Index m = 1;              // mini-batch size
  double dim_term = 1.0;    // d, or intrinsic dimension
  double delta = 0.01;      // failure probability
  BoundKind kind = BoundKind::linear;
};

/// High-probability bound on |P H_m|:
///   lambda + 2 (lambda + kappa) / (3 m) * L + sqrt(2 lambda kappa / m * L)
/// with L = ln(2 d / delta) (linear) or ln(8 d / delta) (kernel).
double bernstein_bound(const StepSizeBoundInputs& in);

enum class StepMode { bound, heuristic };

struct StepSizeOptions {
  BoundKind kind = BoundKind::linear;
  double dim_term = 0.0;  // <= 0: eigensystem dimension (linear) or 1 / lambda_1 (kernel)
  double heuristic_constant = 1.0;
};

/// bound:     eta = 1 / bernstein_bound(lambda_{k+1}, ...)
/// heuristic: eta = c sqrt(m) / sqrt(lambda_{k+1} kappa)
/// lambda_{k+1} is the eigensystem's tail (lambda_1 when k = 0).
double auto_step_size(const EigenSystem& es, Index m, double kappa, double delta, StepMode mode,
                      const StepSizeOptions& options = {});

/// Effective rank tr(A) / lambda_1(A) of a subsample covariance; for unit
/// diagonal kernels tr(K_M / M) = 1 so this is 1 / lambda_1.
double effective_rank(double trace, double lambda_1);

struct NormCheckResult {
  double fraction_within = 0.0;  // trials with |P H_m| <= bound
  double bound = 0.0;
  double max_norm = 0.0;
  Index trials = 0;
};

/// Samples `trials` mini-batches of size m (each without replacement, trial t
/// seeded by derive_seed(seed, t)), forms P H_m densely and compares its
/// spectral norm with the linear Bernstein bound at lambda_{k+1} of P's
/// eigensystem, kappa = max_i |x_i|^2 and d = columns of X.
NormCheckResult empirical_norm_check(const Matrix& X, const LinearPreconditioner& P, Index m,
                                     Index trials, std::uint64_t seed, double delta);

}  // namespace eigenpro

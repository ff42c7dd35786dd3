#pragma once

#include <cstdint>
#include <string>

#include "eigenpro/common.hpp"
#include "eigenpro/kernels.hpp"

namespace eigenpro {

/// Eigenvalues are those of the covariance H_M = X_M^T X_M / M (or K_M / M
/// for kernels), i.e. sigma_i(X_M)^2 / M. This is the only convention used.
enum class ScalingConvention { covariance };

/// Top-k eigensystem of a subsample covariance, plus the (k+1)-th eigenvalue.
struct EigenSystem {
  Matrix vectors;  // d x k, orthonormal columns
  Vector values;   // k, non-increasing, positive
  double tail = 0.0;
  Index subsample_size = 0;
  ScalingConvention scaling = ScalingConvention::covariance;

  Index rank() const { return values.size(); }
  Index dim() const { return vectors.rows(); }

  /// Largest eigenvalue known to the system (values[0], or tail when k = 0).
  double top() const { return rank() > 0 ? values[0] : tail; }

  /// Checks orthonormality (1e-8), ordering, positivity and tail <= values[k-1].
  /// Throws NumericError on violation.
  void validate() const;
};

/// Knobs of the randomized range finder.
struct RsvdOptions {
  Index oversampling = 10;
  int power_iterations = 2;
};

enum class EigenMethod { rsvd, nsvd };
std::string to_string(EigenMethod method);
EigenMethod parse_eigen_method(const std::string& name);

/// Samples M rows of X without replacement and returns the top-k eigensystem
/// of X_M^T X_M / M by randomized SVD of X_M.
EigenSystem rsvd(const Matrix& X, Index k, Index M, std::uint64_t seed, RsvdOptions options = {});

/// Nystrom route: eigendecomposes the M x M Gram matrix X_M X_M^T / M and
/// back-projects through X_M^T, then Gram-Schmidt and a Rayleigh-quotient sort.
EigenSystem nsvd(const Matrix& X, Index k, Index M, std::uint64_t seed);

/// Same as rsvd/nsvd on an already sampled block (all rows used).
EigenSystem rsvd_subsample(const Matrix& XM, Index k, std::uint64_t seed, RsvdOptions options = {});
EigenSystem nsvd_subsample(const Matrix& XM, Index k);

/// Top-k eigensystem of K_M / M for an M-point subsample, with eigenvectors
/// extended to all n training points by e_i(x_j) ~ sum_m k(x_j, x_m) v_i[m]
/// and re-orthonormalized. Only the M x M and n x M kernel blocks are formed.
/// rsvd sketches K_M / M; nsvd eigendecomposes it densely.
EigenSystem kernel_eigensystem(const KernelSpec& spec, const Matrix& X, Index k, Index M,
                               std::uint64_t seed, EigenMethod method = EigenMethod::rsvd,
                               RsvdOptions options = {});

/// Flips each column so that its largest-magnitude entry is positive.
void canonicalize_signs(Matrix& vectors);

}  // namespace eigenpro

#pragma once

#include <span>
#include <string>
#include <string_view>

#include "eigenpro/common.hpp"

namespace eigenpro {

enum class KernelFamily { gaussian, laplace, cauchy };

std::string to_string(KernelFamily family);
KernelFamily parse_kernel_family(std::string_view name);

/// Radial kernel with unit diagonal.
///
///   gaussian  exp(-|x-y|^2 / (2 s))   bandwidth s = sigma^2
///   laplace   exp(-|x-y| / s)         bandwidth s = sigma
///   cauchy    1 / (1 + |x-y|^2 / s)   bandwidth s = sigma^2
struct KernelSpec {
  KernelFamily family = KernelFamily::gaussian;
  double bandwidth = 1.0;

  /// Throws InvalidArgument unless bandwidth is finite and positive.
  void validate() const;

  double from_squared_distance(double squared_distance) const;
};

inline std::span<const double> row_span(const Matrix& m, Index row) {
  return {m.data() + row * m.cols(), static_cast<std::size_t>(m.cols())};
}

/// Pointwise evaluation using the direct form sum_j (x_j - y_j)^2.
double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

/// Kernel matrix K(i, j) = k(A_i, B_j), assembled in parallel over rows of A.
/// Distances use |a|^2 + |b|^2 - 2 a.b clamped at zero. Passing the same
/// matrix for A and B only computes the upper triangle.
Matrix kernel_matrix(const KernelSpec& spec, const Matrix& A, const Matrix& B);

}  // namespace eigenpro

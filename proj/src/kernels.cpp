#include "eigenpro/kernels.hpp"

#include <cmath>

#include "eigenpro/error.hpp"
#include "eigenpro/parallel.hpp"

namespace eigenpro {

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::gaussian: return "gaussian";
    case KernelFamily::laplace: return "laplace";
    case KernelFamily::cauchy: return "cauchy";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "gaussian") return KernelFamily::gaussian;
  if (name == "laplace") return KernelFamily::laplace;
  if (name == "cauchy") return KernelFamily::cauchy;
  throw InvalidArgument("unknown kernel family '" + std::string(name) +
                        "' (expected gaussian, laplace or cauchy)");
}

void KernelSpec::validate() const {
  require(std::isfinite(bandwidth) && bandwidth > 0.0, "kernel bandwidth must be positive");
}

double KernelSpec::from_squared_distance(double squared_distance) const {
  switch (family) {
    case KernelFamily::gaussian: return std::exp(-squared_distance / (2.0 * bandwidth));
    case KernelFamily::laplace: return std::exp(-std::sqrt(squared_distance) / bandwidth);
    case KernelFamily::cauchy: return 1.0 / (1.0 + squared_distance / bandwidth);
  }
  return 0.0;
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
  spec.validate();
  require(x.size() == y.size(), "kernel_eval: dimension mismatch (" + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()) + ")");
  double sq = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double diff = x[j] - y[j];
    sq += diff * diff;
  }
  return spec.from_squared_distance(sq);
}

Matrix kernel_matrix(const KernelSpec& spec, const Matrix& A, const Matrix& B) {
  spec.validate();
  require(A.cols() == B.cols(), "kernel_matrix: column count mismatch (" +
                                    std::to_string(A.cols()) + " vs " + std::to_string(B.cols()) +
                                    ")");
  Matrix out;
  const Vector a_norms = omp::squared_row_norms(A);
  if (&A == &B) {
    omp::kernel_block_symmetric(spec, A, a_norms, out);
  } else {
    omp::kernel_block(spec, A, a_norms, B, omp::squared_row_norms(B), out);
  }
  return out;
}

}  // namespace eigenpro

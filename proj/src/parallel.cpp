#include "eigenpro/parallel.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace eigenpro {

double fixed_order_dot(const double* a, const double* b, Index n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  Index k = 0;
  for (; k + 4 <= n; k += 4) {
    s0 += a[k] * b[k];
    s1 += a[k + 1] * b[k + 1];
    s2 += a[k + 2] * b[k + 2];
    s3 += a[k + 3] * b[k + 3];
  }
  for (; k < n; ++k) s0 += a[k] * b[k];
  return (s0 + s1) + (s2 + s3);
}

namespace {

inline double kernel_entry(const KernelSpec& spec, const double* a, double a_norm,
                           const double* b, double b_norm, Index p) {
  const double sq = std::max(0.0, a_norm + b_norm - 2.0 * fixed_order_dot(a, b, p));
  return spec.from_squared_distance(sq);
}

inline void kernel_row(const KernelSpec& spec, const Matrix& A, const Vector& a_norms,
                       const Matrix& B, const Vector& b_norms, Index i, Index j_begin,
                       Matrix& out) {
  const Index p = A.cols();
  const double* a = A.data() + i * p;
  double* dst = out.data() + i * out.cols();
  for (Index j = j_begin; j < B.rows(); ++j)
    dst[j] = kernel_entry(spec, a, a_norms[i], B.data() + j * p, b_norms[j], p);
}

inline void rff_row(const Matrix& omega, const Vector& phase, double scale, const Matrix& X,
                    Index i, Matrix& out) {
  const Index p = X.cols();
  const double* x = X.data() + i * p;
  double* dst = out.data() + i * out.cols();
  for (Index j = 0; j < omega.rows(); ++j)
    dst[j] = scale * std::cos(fixed_order_dot(omega.data() + j * p, x, p) + phase[j]);
}

inline void mirror_upper(Matrix& out, Index i) {
  for (Index j = 0; j < i; ++j) out(i, j) = out(j, i);
}

}  // namespace

namespace serial {

Vector squared_row_norms(const Matrix& A) {
  Vector norms(A.rows());
  for (Index i = 0; i < A.rows(); ++i) {
    const double* a = A.data() + i * A.cols();
    norms[i] = fixed_order_dot(a, a, A.cols());
  }
  return norms;
}

void kernel_block(const KernelSpec& spec, const Matrix& A, const Vector& a_norms,
                  const Matrix& B, const Vector& b_norms, Matrix& out) {
  out.resize(A.rows(), B.rows());
  for (Index i = 0; i < A.rows(); ++i) kernel_row(spec, A, a_norms, B, b_norms, i, 0, out);
}

void kernel_block_symmetric(const KernelSpec& spec, const Matrix& A, const Vector& a_norms,
                            Matrix& out) {
  out.resize(A.rows(), A.rows());
  for (Index i = 0; i < A.rows(); ++i) kernel_row(spec, A, a_norms, A, a_norms, i, i, out);
  for (Index i = 0; i < A.rows(); ++i) mirror_upper(out, i);
}

void rff_block(const Matrix& omega, const Vector& phase, double scale, const Matrix& X,
               Matrix& out) {
  out.resize(X.rows(), omega.rows());
  for (Index i = 0; i < X.rows(); ++i) rff_row(omega, phase, scale, X, i, out);
}

}  // namespace serial

namespace omp {

Vector squared_row_norms(const Matrix& A) {
  Vector norms(A.rows());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < A.rows(); ++i) {
    const double* a = A.data() + i * A.cols();
    norms[i] = fixed_order_dot(a, a, A.cols());
  }
  return norms;
}

void kernel_block(const KernelSpec& spec, const Matrix& A, const Vector& a_norms,
                  const Matrix& B, const Vector& b_norms, Matrix& out) {
  out.resize(A.rows(), B.rows());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < A.rows(); ++i) kernel_row(spec, A, a_norms, B, b_norms, i, 0, out);
}

void kernel_block_symmetric(const KernelSpec& spec, const Matrix& A, const Vector& a_norms,
                            Matrix& out) {
  out.resize(A.rows(), A.rows());
#pragma omp parallel for schedule(dynamic, 16)
  for (Index i = 0; i < A.rows(); ++i) kernel_row(spec, A, a_norms, A, a_norms, i, i, out);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < A.rows(); ++i) mirror_upper(out, i);
}

void rff_block(const Matrix& omega, const Vector& phase, double scale, const Matrix& X,
               Matrix& out) {
  out.resize(X.rows(), omega.rows());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < X.rows(); ++i) rff_row(omega, phase, scale, X, i, out);
}

}  // namespace omp

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace eigenpro

#pragma once

// Data-parallel inner loops. Every routine exists twice: `serial::` is the
// plain reference, `omp::` splits the outer (row) loop across OpenMP threads.
// Each output element is produced by the same arithmetic in both versions, so
// results are bit-identical for any thread count; tests/test_parallel.cpp
// checks this and bench/ compares their speed.

#include "eigenpro/common.hpp"
#include "eigenpro/kernels.hpp"

namespace eigenpro {

/// Dot product with four interleaved accumulators in a fixed order.
double fixed_order_dot(const double* a, const double* b, Index n);

namespace serial {

Vector squared_row_norms(const Matrix& A);

/// out(i, j) = k(A_i, B_j). `out` is resized.
void kernel_block(const KernelSpec& spec, const Matrix& A, const Vector& a_norms,
                  const Matrix& B, const Vector& b_norms, Matrix& out);

/// Same as kernel_block(spec, A, n, A, n, out) but only the upper triangle is
/// computed and mirrored.
void kernel_block_symmetric(const KernelSpec& spec, const Matrix& A, const Vector& a_norms,
                            Matrix& out);

/// out(i, j) = scale * cos(omega_j . X_i + phase_j).
void rff_block(const Matrix& omega, const Vector& phase, double scale, const Matrix& X,
               Matrix& out);

}  // namespace serial

namespace omp {

Vector squared_row_norms(const Matrix& A);
void kernel_block(const KernelSpec& spec, const Matrix& A, const Vector& a_norms,
                  const Matrix& B, const Vector& b_norms, Matrix& out);
void kernel_block_symmetric(const KernelSpec& spec, const Matrix& A, const Vector& a_norms,
                            Matrix& out);
void rff_block(const Matrix& omega, const Vector& phase, double scale, const Matrix& X,
               Matrix& out);

}  // namespace omp

/// Sets the OpenMP thread count used by omp:: routines (<= 0 keeps the default).
void set_thread_count(int threads);
int thread_count();

}  // namespace eigenpro

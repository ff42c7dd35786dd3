#pragma once

#include <algorithm>
#include <functional>

#include "eigenpro/common.hpp"
#include "eigenpro/eigensolver.hpp"
#include "eigenpro/kernels.hpp"

namespace eigenpro::testing {

using Dense = Eigen::MatrixXd;

inline Dense dense_kernel(const KernelSpec& spec, const Matrix& X) {
  Dense K(X.rows(), X.rows());
  for (Index i = 0; i < X.rows(); ++i)
    for (Index j = 0; j < X.rows(); ++j) K(i, j) = kernel_eval(spec, row_span(X, i), row_span(X, j));
  return K;
}

inline Vector descending_eigenvalues(const Dense& A) {
  Eigen::SelfAdjointEigenSolver<Dense> eig(A, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().reverse();
}

inline EigenSystem dense_eigensystem(const Dense& H, Index k) {
  Eigen::SelfAdjointEigenSolver<Dense> eig(H);
  const Index d = H.rows();
  EigenSystem es;
  es.values = eig.eigenvalues().reverse().head(k);
  es.tail = eig.eigenvalues()[d - 1 - k];
  es.vectors = eig.eigenvectors().rowwise().reverse().leftCols(k);
  es.subsample_size = d;
  return es;
}

inline Dense covariance(const Matrix& X) {
  return Dense(X.transpose() * X) / static_cast<double>(X.rows());
}

inline double max_real_eigenvalue(const Dense& A) {
  Eigen::EigenSolver<Dense> eig(A, false);
  return eig.eigenvalues().real().maxCoeff();
}

inline bool bit_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::equal(a.data(), a.data() + a.size(), b.data());
}

}  // namespace eigenpro::testing

#include "eigenpro/preconditioner.hpp"

#include <cmath>

#include "eigenpro/error.hpp"

namespace eigenpro {
namespace {

void check_tau(double tau) {
  require(std::isfinite(tau) && tau > 0.0 && tau <= 1.0, "damping factor tau must be in (0, 1]");
}

// 1 - tau * lambda_{k+1} / lambda_i, non-increasing in i.
Vector damped_weights(const EigenSystem& es, double tau) {
  es.validate();
  Vector w(es.rank());
  for (Index i = 0; i < es.rank(); ++i) {
    w[i] = 1.0 - tau * es.tail / es.values[i];
    if (w[i] < 0.0)
      throw NumericError("preconditioner weight " + std::to_string(i + 1) +
                         " is negative: tail eigenvalue exceeds lambda_i");
    if (i > 0 && w[i] > w[i - 1])
      throw NumericError("preconditioner weights must be non-increasing");
  }
  return w;
}

}  // namespace

LinearPreconditioner LinearPreconditioner::build(EigenSystem eigensystem, double tau) {
  check_tau(tau);
  LinearPreconditioner p;
  p.weights_ = damped_weights(eigensystem, tau);
  p.eigensystem_ = std::move(eigensystem);
  p.tau_ = tau;
  return p;
}

Matrix LinearPreconditioner::apply(const Matrix& v) const {
  require(v.rows() == dim(), "preconditioner: expected " + std::to_string(dim()) +
                                 " rows, got " + std::to_string(v.rows()));
  if (eigensystem_.rank() == 0) return v;
  const auto& E = eigensystem_.vectors;
  const Matrix coeffs = weights_.asDiagonal() * (E.transpose() * v);
  return v - E * coeffs;
}

Vector LinearPreconditioner::apply(const Vector& v) const {
  Matrix block = Eigen::Map<const Matrix>(v.data(), v.size(), 1);
  return apply(block).col(0);
}

KernelPreconditioner KernelPreconditioner::build(EigenSystem eigensystem, double tau) {
  check_tau(tau);
  KernelPreconditioner p;
  const Vector w = damped_weights(eigensystem, tau);
  p.weights_ = w.cwiseQuotient(eigensystem.values);
  if (!p.weights_.allFinite()) throw NumericError("kernel preconditioner weights are not finite");
  p.eigensystem_ = std::move(eigensystem);
  p.tau_ = tau;
  return p;
}

Matrix KernelPreconditioner::correction(const Matrix& v) const {
  const auto& E = eigensystem_.vectors;
  require(v.rows() == E.rows(), "kernel preconditioner: expected " + std::to_string(E.rows()) +
                                    " rows, got " + std::to_string(v.rows()));
  if (eigensystem_.rank() == 0) return Matrix::Zero(v.rows(), v.cols());
  const double n = static_cast<double>(E.rows());
  const Matrix coeffs = (weights_ / n).asDiagonal() * (E.transpose() * v);
  return E * coeffs;
}

Vector nystrom_eigenfunctions(const EigenSystem& es, const KernelSpec& spec, const Matrix& X,
                              std::span<const double> x) {
  require(es.dim() == X.rows(), "eigensystem does not belong to this training set");
  require(static_cast<Index>(x.size()) == X.cols(), "eigenfunction: dimension mismatch");
  Vector kx(X.rows());
  for (Index j = 0; j < X.rows(); ++j) kx[j] = kernel_eval(spec, x, row_span(X, j));
  const double root_n = std::sqrt(static_cast<double>(X.rows()));
  Vector e = es.vectors.transpose() * kx;
  for (Index i = 0; i < es.rank(); ++i) e[i] /= es.values[i] * root_n;
  return e;
}

double eigenpro_kernel_eval(const EigenSystem& es, const KernelSpec& spec, const Matrix& X,
                            std::span<const double> x, std::span<const double> z) {
  const double base = kernel_eval(spec, x, z);
  if (es.rank() == 0) return base;
  const Vector ex = nystrom_eigenfunctions(es, spec, X, x);
  const Vector ez = nystrom_eigenfunctions(es, spec, X, z);
  double correction = 0.0;
  for (Index i = 0; i < es.rank(); ++i)
    correction += (es.values[i] - es.tail) * (ex[i] * ez[i]);
  return base - correction;
}

}  // namespace eigenpro

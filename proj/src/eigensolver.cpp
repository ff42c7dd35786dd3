#include "eigenpro/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eigenpro/error.hpp"
#include "eigenpro/random.hpp"

namespace eigenpro {
namespace {

using DenseMatrix = Eigen::MatrixXd;

DenseMatrix orthonormal_basis(const DenseMatrix& Y) {
  Eigen::HouseholderQR<DenseMatrix> qr(Y);
  return qr.householderQ() * DenseMatrix::Identity(Y.rows(), Y.cols());
}

void check_sizes(Index n, Index d, Index k, Index M) {
  require(k >= 0, "number of eigen-directions k must be non-negative");
  require(M >= 1 && M <= n, "subsample size M=" + std::to_string(M) + " must be in [1, n=" +
                                std::to_string(n) + "]");
  require(k + 1 <= std::min(M, d), "need k+1 <= min(M, d); got k=" + std::to_string(k) +
                                       ", M=" + std::to_string(M) + ", d=" + std::to_string(d));
}

Index sketch_width(Index k, Index limit, const RsvdOptions& options) {
  require(options.oversampling >= 0 && options.power_iterations >= 0,
          "RSVD oversampling and power iterations must be non-negative");
  return std::min(k + 1 + options.oversampling, limit);
}

// Modified Gram-Schmidt, applied twice for stability. Columns that collapse
// indicate a degenerate (rank-deficient) projection.
void orthonormalize_columns(DenseMatrix& V) {
  for (Index j = 0; j < V.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Index i = 0; i < j; ++i) V.col(j) -= V.col(i).dot(V.col(j)) * V.col(i);
    const double norm = V.col(j).norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw DegenerateInputError("eigenvector " + std::to_string(j + 1) +
                                 " vanished during orthogonalization");
    V.col(j) /= norm;
  }
}

EigenSystem finish(DenseMatrix vectors, Vector values, double tail, Index M) {
  if (!(values.size() == 0 ? tail > 0.0 : values[0] > 0.0))
    throw DegenerateInputError("subsample covariance is zero");
  for (Index i = 0; i < values.size(); ++i)
    if (!(values[i] > 0.0))
      throw DegenerateInputError("eigenvalue " + std::to_string(i + 1) +
                                 " is not positive; reduce k");
  EigenSystem es;
  es.vectors = vectors;
  canonicalize_signs(es.vectors);
  es.values = std::move(values);
  es.tail = std::max(0.0, tail);
  es.subsample_size = M;
  es.validate();
  return es;
}

// Randomized eigensolver for a symmetric PSD matrix A (M x M).
// Returns the top (k+1) eigenvalues and top-k eigenvectors.
void randomized_symmetric(const DenseMatrix& A, Index k, std::uint64_t seed,
                          const RsvdOptions& options, Vector& values, double& tail,
                          DenseMatrix& vectors) {
  const Index l = sketch_width(k, A.rows(), options);
  Rng rng(seed);
  DenseMatrix Q = orthonormal_basis(A * DenseMatrix(rng.gaussian_matrix(A.rows(), l)));
  for (int q = 0; q < options.power_iterations; ++q) Q = orthonormal_basis(A * Q);
  DenseMatrix B = Q.transpose() * A * Q;
  B = 0.5 * (B + B.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(B);
  if (eig.info() != Eigen::Success) throw NumericError("small eigenproblem did not converge");
  // Ascending order from Eigen; read from the back.
  values.resize(k);
  for (Index i = 0; i < k; ++i) values[i] = eig.eigenvalues()[l - 1 - i];
  tail = eig.eigenvalues()[l - 1 - k];
  vectors = Q * eig.eigenvectors().rightCols(k).rowwise().reverse();
}

}  // namespace

void EigenSystem::validate() const {
  const Index k = rank();
  if (vectors.cols() != k) throw NumericError("eigensystem: vector/value count mismatch");
  for (Index i = 0; i < k; ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw NumericError("eigensystem: eigenvalues must be positive and finite");
    if (i + 1 < k && values[i] < values[i + 1])
      throw NumericError("eigensystem: eigenvalues must be non-increasing");
  }
  if (!(tail >= 0.0) || !std::isfinite(tail)) throw NumericError("eigensystem: invalid tail");
  if (k > 0 && tail > values[k - 1])
    throw NumericError("eigensystem: tail eigenvalue exceeds lambda_k");
  if (k > 0) {
    const DenseMatrix gram = vectors.transpose() * vectors;
    const double err = (gram - DenseMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (err > 1e-8) throw NumericError("eigensystem: vectors are not orthonormal");
  }
}

std::string to_string(EigenMethod method) {
  return method == EigenMethod::rsvd ? "rsvd" : "nsvd";
}

EigenMethod parse_eigen_method(const std::string& name) {
  if (name == "rsvd") return EigenMethod::rsvd;
  if (name == "nsvd") return EigenMethod::nsvd;
  throw InvalidArgument("unknown eigensolver '" + name + "' (expected rsvd or nsvd)");
}

void canonicalize_signs(Matrix& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index arg = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

EigenSystem rsvd_subsample(const Matrix& XM, Index k, std::uint64_t seed, RsvdOptions options) {
  const Index M = XM.rows();
  const Index d = XM.cols();
  check_sizes(M, d, k, M);
  const Index l = sketch_width(k, std::min(M, d), options);
  const DenseMatrix A = XM;

  Rng rng(seed);
  DenseMatrix Q = orthonormal_basis(A * DenseMatrix(rng.gaussian_matrix(d, l)));
  for (int q = 0; q < options.power_iterations; ++q) {
    const DenseMatrix Z = orthonormal_basis(A.transpose() * Q);
    Q = orthonormal_basis(A * Z);
  }
  const DenseMatrix B = Q.transpose() * A;  // l x d
  Eigen::BDCSVD<DenseMatrix> svd(B, Eigen::ComputeThinV);
  const Vector sigma = svd.singularValues();

  const double scale = 1.0 / static_cast<double>(M);
  Vector values(k);
  for (Index i = 0; i < k; ++i) values[i] = sigma[i] * sigma[i] * scale;
  const double tail = sigma[k] * sigma[k] * scale;
  return finish(svd.matrixV().leftCols(k), std::move(values), tail, M);
}

EigenSystem nsvd_subsample(const Matrix& XM, Index k) {
  const Index M = XM.rows();
  const Index d = XM.cols();
  check_sizes(M, d, k, M);
  const DenseMatrix A = XM;
  const double scale = 1.0 / static_cast<double>(M);

  DenseMatrix W = A * A.transpose() * scale;
  W = 0.5 * (W + W.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(W);
  if (eig.info() != Eigen::Success) throw NumericError("Gram eigenproblem did not converge");

  Vector values(k);
  for (Index i = 0; i < k; ++i) values[i] = eig.eigenvalues()[M - 1 - i];
  const double tail = eig.eigenvalues()[M - 1 - k];
  if (!(values.size() == 0 ? tail > 0.0 : values[0] > 0.0))
    throw DegenerateInputError("subsample covariance is zero");

  DenseMatrix back = A.transpose() * eig.eigenvectors().rightCols(k).rowwise().reverse();
  orthonormalize_columns(back);

  // Re-sort by Rayleigh quotient e^T H_M e = |X_M e|^2 / M.
  const Vector rayleigh = (A * back).colwise().squaredNorm().transpose() * scale;
  std::vector<Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return rayleigh[a] > rayleigh[b]; });
  DenseMatrix sorted(d, k);
  for (Index i = 0; i < k; ++i) sorted.col(i) = back.col(order[static_cast<std::size_t>(i)]);
  return finish(std::move(sorted), std::move(values), tail, M);
}

EigenSystem rsvd(const Matrix& X, Index k, Index M, std::uint64_t seed, RsvdOptions options) {
  check_sizes(X.rows(), X.cols(), k, M);
  Rng rng(derive_seed(seed, "subsample"));
  const auto rows = rng.sample_without_replacement(X.rows(), M);
  return rsvd_subsample(X(rows, Eigen::all), k, derive_seed(seed, "sketch"), options);
}

EigenSystem nsvd(const Matrix& X, Index k, Index M, std::uint64_t seed) {
  check_sizes(X.rows(), X.cols(), k, M);
  Rng rng(derive_seed(seed, "subsample"));
  const auto rows = rng.sample_without_replacement(X.rows(), M);
  return nsvd_subsample(X(rows, Eigen::all), k);
}

EigenSystem kernel_eigensystem(const KernelSpec& spec, const Matrix& X, Index k, Index M,
                               std::uint64_t seed, EigenMethod method, RsvdOptions options) {
  spec.validate();
  check_sizes(X.rows(), X.rows(), k, M);
  Rng rng(derive_seed(seed, "subsample"));
  const auto rows = rng.sample_without_replacement(X.rows(), M);
  const Matrix XM = X(rows, Eigen::all);

  const DenseMatrix KM = kernel_matrix(spec, XM, XM) / static_cast<double>(M);
  Vector values;
  double tail = 0.0;
  DenseMatrix small;
  if (method == EigenMethod::rsvd) {
    randomized_symmetric(KM, k, derive_seed(seed, "sketch"), options, values, tail, small);
  } else {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(KM);
    if (eig.info() != Eigen::Success) throw NumericError("kernel eigenproblem did not converge");
    values.resize(k);
    for (Index i = 0; i < k; ++i) values[i] = eig.eigenvalues()[M - 1 - i];
    tail = eig.eigenvalues()[M - 1 - k];
    small = eig.eigenvectors().rightCols(k).rowwise().reverse();
  }
  if (!(values.size() == 0 ? tail > 0.0 : values[0] > 0.0))
    throw DegenerateInputError("subsample kernel matrix is zero");

  DenseMatrix extended;
  if (k > 0) {
    extended = DenseMatrix(kernel_matrix(spec, X, XM)) * small;
    orthonormalize_columns(extended);
  } else {
    extended.resize(X.rows(), 0);
  }
  return finish(std::move(extended), std::move(values), tail, M);
}

}  // namespace eigenpro

#include <cmath>

#include "doctest.h"
#include "eigenpro/error.hpp"
#include "eigenpro/preconditioner.hpp"
#include "eigenpro/random.hpp"
#include "helpers.hpp"

using namespace eigenpro;
using testing::Dense;

namespace {

Dense random_spd(Index d, std::uint64_t seed) {
  Rng r(seed);
  const Matrix A = r.gaussian_matrix(d, d);
  return Dense(A.transpose() * A) / static_cast<double>(d) + 0.01 * Dense::Identity(d, d);
}

Dense materialize(const LinearPreconditioner& P) {
  const Matrix I = Matrix::Identity(P.dim(), P.dim());
  return P.apply(I);
}

EigenSystem two_level(double l1, double l2, double tail) {
  EigenSystem es;
  es.vectors = Matrix::Identity(3, 2);
  es.values = Vector(2);
  es.values << l1, l2;
  es.tail = tail;
  es.subsample_size = 3;
  return es;
}

}  // namespace

TEST_CASE("empty eigensystem gives the identity") {
  EigenSystem es;
  es.vectors = Matrix(4, 0);
  es.tail = 1.0;
  const auto P = LinearPreconditioner::build(es, 1.0);
  Rng r(1);
  const Matrix v = r.gaussian_matrix(4, 2);
  CHECK(testing::bit_equal(P.apply(v), v));
}

TEST_CASE("plug-in weight for a single direction") {
  EigenSystem es;
  es.vectors = Matrix::Identity(2, 1);
  es.values = Vector::Constant(1, 4.0);
  es.tail = 2.0;
  const auto P = LinearPreconditioner::build(es, 1.0);
  CHECK(P.weights()[0] == doctest::Approx(0.5));
  Vector e1(2);
  e1 << 1.0, 0.0;
  const Vector out = P.apply(e1);
  CHECK(out[0] == doctest::Approx(0.5));
  CHECK(out[1] == 0.0);
}

TEST_CASE("exact eigensystem flattens the top of the spectrum") {
  const Dense H = random_spd(30, 7);
  const Vector ref = testing::descending_eigenvalues(H);
  const auto P = LinearPreconditioner::build(testing::dense_eigensystem(H, 5), 1.0);
  const Dense PH = materialize(P) * H;
  CHECK(std::abs(testing::max_real_eigenvalue(PH) - ref[5]) < 1e-8);

  Eigen::EigenSolver<Dense> eig(PH, false);
  std::vector<double> vals;
  for (Index i = 0; i < 30; ++i) vals.push_back(eig.eigenvalues()[i].real());
  std::sort(vals.rbegin(), vals.rend());
  for (Index i = 0; i < 6; ++i) CHECK(std::abs(vals[i] - ref[5]) < 1e-8);
  for (Index i = 6; i < 30; ++i) CHECK(std::abs(vals[i] - ref[i]) < 1e-8);
}

TEST_CASE("damped preconditioner keeps the top eigenvalue in [tau l, l]") {
  const Dense H = random_spd(25, 8);
  const Vector ref = testing::descending_eigenvalues(H);
  for (double tau : {0.25, 0.5, 0.9}) {
    const auto P = LinearPreconditioner::build(testing::dense_eigensystem(H, 4), tau);
    const double top = testing::max_real_eigenvalue(materialize(P) * H);
    CHECK(top >= tau * ref[4] - 1e-10);
    CHECK(top <= ref[4] + 1e-10);
  }
}

TEST_CASE("apply matches the materialized matrix, acts on eigenvectors, and is linear") {
  const Dense H = random_spd(30, 9);
  const EigenSystem es = testing::dense_eigensystem(H, 5);
  const auto P = LinearPreconditioner::build(es, 1.0);
  Dense Pd = Dense::Identity(30, 30);
  for (Index i = 0; i < 5; ++i)
    Pd -= P.weights()[i] * Dense(es.vectors.col(i) * es.vectors.col(i).transpose());

  Rng r(2);
  const Vector v = r.gaussian_matrix(30, 1).col(0);
  const Vector w = r.gaussian_matrix(30, 1).col(0);
  CHECK((P.apply(v) - Pd * v).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((P.apply(Vector(2.5 * v - 0.5 * w)) - (2.5 * P.apply(v) - 0.5 * P.apply(w)))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  for (Index i = 0; i < 5; ++i) {
    const Vector e = es.vectors.col(i);
    CHECK((P.apply(e) - (es.tail / es.values[i]) * e).norm() < 1e-12);
  }

  Vector orth = v - es.vectors * (es.vectors.transpose() * v);
  CHECK((P.apply(orth) - orth).norm() < 1e-12);
}

TEST_CASE("weights are non-increasing and within [0, 1)") {
  const Dense H = random_spd(20, 10);
  const auto P = LinearPreconditioner::build(testing::dense_eigensystem(H, 6), 1.0);
  for (Index i = 0; i < 6; ++i) {
    CHECK(P.weights()[i] >= 0.0);
    CHECK(P.weights()[i] < 1.0);
    if (i > 0) CHECK(P.weights()[i] <= P.weights()[i - 1]);
  }
}

TEST_CASE("fixed point of a consistent system is unchanged") {
  const Dense H = random_spd(20, 11);
  Rng r(3);
  const Dense alpha = r.gaussian_matrix(20, 1);
  const Dense b = H * alpha;
  const auto P = LinearPreconditioner::build(testing::dense_eigensystem(H, 5), 0.5);
  const Matrix residual = H * alpha - b;
  CHECK(P.apply(residual).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("invalid tau and negative weights are rejected") {
  const EigenSystem es = two_level(2.0, 1.0, 0.5);
  CHECK_THROWS_AS(LinearPreconditioner::build(es, 0.0), InvalidArgument);
  CHECK_THROWS_AS(LinearPreconditioner::build(es, 1.5), InvalidArgument);
  CHECK_THROWS_AS(KernelPreconditioner::build(es, -1.0), InvalidArgument);
  CHECK_THROWS_AS(LinearPreconditioner::build(two_level(2.0, 1.0, 1.5), 1.0), NumericError);
  CHECK_THROWS_AS(KernelPreconditioner::build(two_level(2.0, 1.0, 1.5), 1.0), NumericError);
}

TEST_CASE("kernel weights follow the plug-in formula") {
  EigenSystem es;
  es.vectors = Matrix::Identity(3, 1);
  es.values = Vector::Constant(1, 2.0);
  es.tail = 1.0;
  CHECK(KernelPreconditioner::build(es, 1.0).weights()[0] == doctest::Approx(0.25));
  es.values[0] = 1.0;
  CHECK(KernelPreconditioner::build(es, 1.0).weights()[0] == 0.0);
}

TEST_CASE("kernel correction flattens the alpha-space operator") {
  Rng r(12);
  const Matrix X = r.gaussian_matrix(50, 3);
  const KernelSpec spec{KernelFamily::gaussian, 1.0};
  const Dense K = testing::dense_kernel(spec, X);
  const Dense Kn = K / 50.0;
  const Vector ref = testing::descending_eigenvalues(Kn);
  const auto D = KernelPreconditioner::build(testing::dense_eigensystem(Kn, 6), 1.0);
  const Dense DK = D.correction(Matrix(K));
  const Dense op = (Dense::Identity(50, 50) - DK) * Kn;
  CHECK(testing::max_real_eigenvalue(op) <= ref[6] * (1 + 1e-8));
  CHECK(testing::max_real_eigenvalue(op) >= ref[6] * (1 - 1e-8));
}

TEST_CASE("eigenpro kernel on training points") {
  Rng r(13);
  const Matrix X = r.gaussian_matrix(40, 2);
  const KernelSpec spec{KernelFamily::gaussian, 1.0};
  const Dense K = testing::dense_kernel(spec, X);
  const EigenSystem es = testing::dense_eigensystem(K / 40.0, 5);

  Dense expected = K;
  for (Index i = 0; i < 5; ++i)
    expected -= 40.0 * (es.values[i] - es.tail) *
                Dense(es.vectors.col(i) * es.vectors.col(i).transpose());

  double worst = 0;
  for (Index a = 0; a < 40; a += 3)
    for (Index b = 0; b < 40; b += 5) {
      const double v = eigenpro_kernel_eval(es, spec, X, row_span(X, a), row_span(X, b));
      worst = std::max(worst, std::abs(v - expected(a, b)));
      CHECK(v == eigenpro_kernel_eval(es, spec, X, row_span(X, b), row_span(X, a)));
    }
  CHECK(worst < 1e-8);

  EigenSystem empty;
  empty.vectors = Matrix(40, 0);
  empty.tail = es.values[0];
  CHECK(eigenpro_kernel_eval(empty, spec, X, row_span(X, 1), row_span(X, 2)) ==
        kernel_eval(spec, row_span(X, 1), row_span(X, 2)));
}

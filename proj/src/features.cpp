#include "eigenpro/features.hpp"

#include <cmath>
#include <numbers>

#include "eigenpro/error.hpp"
#include "eigenpro/parallel.hpp"
#include "eigenpro/random.hpp"

namespace eigenpro {

RffMap RffMap::generate(Index input_dim, Index feature_count, double sigma2, std::uint64_t seed) {
  require(input_dim > 0 && feature_count > 0, "RFF map needs positive input and feature counts");
  require(std::isfinite(sigma2) && sigma2 > 0.0, "RFF bandwidth must be positive");
  RffMap map;
  map.source_bandwidth = sigma2;
  map.seed = seed;
  Rng rng(seed);
  const double inv_sigma = 1.0 / std::sqrt(sigma2);
  map.omega = rng.gaussian_matrix(feature_count, input_dim) * inv_sigma;
  map.phase.resize(feature_count);
  for (Index i = 0; i < feature_count; ++i) map.phase[i] = 2.0 * std::numbers::pi * rng.uniform();
  return map;
}

double RffMap::scale() const { return std::sqrt(2.0 / static_cast<double>(feature_count())); }

RbfMap RbfMap::sample_centers(const Matrix& X, Index count, const KernelSpec& spec,
                              std::uint64_t seed) {
  spec.validate();
  require(count > 0 && count <= X.rows(), "RBF center count must be in [1, n]");
  Rng rng(seed);
  const auto rows = rng.sample_without_replacement(X.rows(), count);
  RbfMap map;
  map.spec = spec;
  map.centers = X(rows, Eigen::all);
  return map;
}

Vector rff_apply(const RffMap& map, std::span<const double> x) {
  require(static_cast<Index>(x.size()) == map.input_dim(),
          "rff_apply: expected dimension " + std::to_string(map.input_dim()) + ", got " +
              std::to_string(x.size()));
  Matrix row = Eigen::Map<const Matrix>(x.data(), 1, map.input_dim());
  Matrix out;
  serial::rff_block(map.omega, map.phase, map.scale(), row, out);
  return out.row(0).transpose();
}

Vector rbf_apply(const RbfMap& map, std::span<const double> x) {
  require(static_cast<Index>(x.size()) == map.input_dim(),
          "rbf_apply: expected dimension " + std::to_string(map.input_dim()) + ", got " +
              std::to_string(x.size()));
  Vector out(map.feature_count());
  for (Index j = 0; j < map.feature_count(); ++j)
    out[j] = kernel_eval(map.spec, x, row_span(map.centers, j));
  return out;
}

std::string FeatureMap::name() const {
  if (rff()) return "rff";
  if (rbf()) return "rbf";
  return "identity";
}

Index FeatureMap::output_dim(Index input_dim) const {
  if (const auto* m = rff()) return m->feature_count();
  if (const auto* m = rbf()) return m->feature_count();
  return input_dim;
}

Matrix FeatureMap::transform(const Matrix& X) const {
  if (const auto* m = rff()) {
    require(X.cols() == m->input_dim(), "feature map: input dimension mismatch");
    Matrix out;
    omp::rff_block(m->omega, m->phase, m->scale(), X, out);
    return out;
  }
  if (const auto* m = rbf()) return kernel_matrix(m->spec, X, m->centers);
  return X;
}

}  // namespace eigenpro

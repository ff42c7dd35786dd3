#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "eigenpro/common.hpp"
#include "eigenpro/kernels.hpp"

namespace eigenpro {

/// Random Fourier features for the Gaussian kernel with bandwidth sigma^2:
/// phi(x) = sqrt(2/d) cos(omega x + b), omega_i ~ N(0, I / sigma^2),
/// b_i ~ U[0, 2 pi). Draws come from Rng(seed): all of omega in row-major
/// order first, then the phases.
struct RffMap {
  Matrix omega;  // d x p
  Vector phase;  // d
  double source_bandwidth = 1.0;
  std::uint64_t seed = 0;

  static RffMap generate(Index input_dim, Index feature_count, double sigma2,
                         std::uint64_t seed);

  Index feature_count() const { return omega.rows(); }
  Index input_dim() const { return omega.cols(); }
  double scale() const;
};

/// RBF-network features phi(x) = (k(x, z_1), ..., k(x, z_d)).
struct RbfMap {
  Matrix centers;  // d x p
  KernelSpec spec;

  /// Picks `count` training rows without replacement as centers.
  static RbfMap sample_centers(const Matrix& X, Index count, const KernelSpec& spec,
                               std::uint64_t seed);

  Index feature_count() const { return centers.rows(); }
  Index input_dim() const { return centers.cols(); }
};

Vector rff_apply(const RffMap& map, std::span<const double> x);
Vector rbf_apply(const RbfMap& map, std::span<const double> x);

/// Raw features, RFF, or RBF; applied row-wise to a batch.
class FeatureMap {
 public:
  struct Identity {};

  FeatureMap() = default;
  explicit FeatureMap(RffMap map) : map_(std::move(map)) {}
  explicit FeatureMap(RbfMap map) : map_(std::move(map)) {}

  bool is_identity() const { return std::holds_alternative<Identity>(map_); }
  const RffMap* rff() const { return std::get_if<RffMap>(&map_); }
  const RbfMap* rbf() const { return std::get_if<RbfMap>(&map_); }
  std::string name() const;

  Index output_dim(Index input_dim) const;
  Matrix transform(const Matrix& X) const;

 private:
  std::variant<Identity, RffMap, RbfMap> map_;
};

}  // namespace eigenpro

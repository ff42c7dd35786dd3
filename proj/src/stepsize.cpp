#include "eigenpro/stepsize.hpp"

#include <algorithm>
#include <cmath>

#include "eigenpro/error.hpp"
#include "eigenpro/random.hpp"

namespace eigenpro {

double bernstein_bound(const StepSizeBoundInputs& in) {
  require(std::isfinite(in.lambda_top) && in.lambda_top > 0.0, "bound: lambda must be positive");
  require(std::isfinite(in.kappa) && in.kappa > 0.0, "bound: kappa must be positive");
  require(in.m > 0, "bound: mini-batch size must be positive");
  require(std::isfinite(in.dim_term) && in.dim_term > 0.0, "bound: dimension term must be positive");
  require(in.delta > 0.0 && in.delta < 1.0, "bound: delta must be in (0, 1)");

  const double factor = in.kind == BoundKind::linear ? 2.0 : 8.0;
  const double log_term = std::log(factor * in.dim_term / in.delta);
  const double m = static_cast<double>(in.m);
  const double lambda = in.lambda_top;
  return lambda + 2.0 * (lambda + in.kappa) / (3.0 * m) * log_term +
         std::sqrt(2.0 * lambda * in.kappa / m * log_term);
}

double effective_rank(double trace, double lambda_1) {
  require(lambda_1 > 0.0 && trace > 0.0, "effective rank needs positive trace and lambda_1");
  return trace / lambda_1;
}

double auto_step_size(const EigenSystem& es, Index m, double kappa, double delta, StepMode mode,
                      const StepSizeOptions& options) {
  const double lambda = es.tail;
  if (mode == StepMode::heuristic) {
    require(lambda > 0.0 && kappa > 0.0 && m > 0, "heuristic step needs positive lambda, kappa, m");
    require(options.heuristic_constant > 0.0, "heuristic constant must be positive");
    return options.heuristic_constant * std::sqrt(static_cast<double>(m)) /
           std::sqrt(lambda * kappa);
  }
  double dim_term = options.dim_term;
  if (dim_term <= 0.0) {
    dim_term = options.kind == BoundKind::linear ? static_cast<double>(es.dim())
                                                 : effective_rank(1.0, es.top());
  }
  return 1.0 / bernstein_bound({lambda, kappa, m, dim_term, delta, options.kind});
}

NormCheckResult empirical_norm_check(const Matrix& X, const LinearPreconditioner& P, Index m,
                                     Index trials, std::uint64_t seed, double delta) {
  const Index n = X.rows();
  const Index d = X.cols();
  require(m >= 1 && m <= n, "mini-batch size m must be in [1, n]");
  require(trials >= 1, "need at least one trial");
  require(P.dim() == d, "preconditioner dimension does not match data");
  require(d <= 4096, "empirical_norm_check materializes d x d matrices; d is too large");

  const double kappa = X.rowwise().squaredNorm().maxCoeff();
  NormCheckResult result;
  result.trials = trials;
  result.bound = bernstein_bound({P.eigensystem().tail, kappa, m, static_cast<double>(d), delta,
                                  BoundKind::linear});

  const Matrix P_dense = P.apply(Matrix(Matrix::Identity(d, d)));
  std::vector<double> norms(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic)
  for (Index t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const auto rows = rng.sample_without_replacement(n, m);
    const Matrix Xm = X(rows, Eigen::all);
    const Eigen::MatrixXd PHm = P_dense * (Xm.transpose() * Xm) / static_cast<double>(m);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(PHm);
    norms[static_cast<std::size_t>(t)] = svd.singularValues()[0];
  }
  Index within = 0;
  for (double v : norms) {
    result.max_norm = std::max(result.max_norm, v);
    if (v <= result.bound) ++within;
  }
  result.fraction_within = static_cast<double>(within) / static_cast<double>(trials);
  return result;
}

}  // namespace eigenpro

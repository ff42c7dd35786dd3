#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eigenpro/common.hpp"
#include "eigenpro/config.hpp"
#include "eigenpro/eigensolver.hpp"
#include "eigenpro/features.hpp"
#include "eigenpro/kernels.hpp"
#include "eigenpro/metrics.hpp"
#include "eigenpro/preconditioner.hpp"
#include "eigenpro/stepsize.hpp"

namespace eigenpro {

/// f(x) = phi(x)^T alpha, one column of alpha per output.
struct LinearModel {
  Matrix alpha;  // feature_dim x c
  FeatureMap feature_map;

  /// Rows of X are raw inputs; the feature map is applied first.
  Matrix predict(const Matrix& X) const;
  /// Rows of F are already mapped features.
  Matrix predict_features(const Matrix& F) const;
};

/// f(x) = sum_i alpha_i k(x_i, x).
struct KernelModel {
  Matrix alpha;  // n x c
  Matrix training_points;
  KernelSpec spec;

  Matrix predict(const Matrix& X) const;
};

/// K(A, B) * alpha without holding more than `block_rows` rows of K at once.
Matrix kernel_times(const KernelSpec& spec, const Matrix& A, const Matrix& B, const Matrix& alpha,
                    Index block_rows = 512);

struct EpochRecord {
  Index epoch = 0;
  double train_loss = 0.0;
  std::optional<double> eval_loss;
  double metric = 0.0;  // on the eval set when present, else on the training set
  double alpha_norm = 0.0;
  double seconds = 0.0;  // wall clock since the start of the run
};

struct TrainReport {
  std::vector<EpochRecord> records;
  std::vector<std::pair<std::string, std::string>> hyperparameters;
  double initial_train_loss = 0.0;
  double step_size = 0.0;
  Index steps = 0;
  double step_seconds = 0.0;  // time spent inside parameter updates only
  std::optional<Index> epochs_to_target;
  std::vector<std::string> notes;
};

using EpochObserver = std::function<void(const EpochRecord&)>;

/// Everything about a run that is not an optimizer hyperparameter.
struct TrainHooks {
  const Matrix* eval_X = nullptr;  // same representation as the training X
  const Matrix* eval_Y = nullptr;
  Task task = Task::regression;
  EpochObserver observer;
};

struct SgdSchedule {
  Index m = 256;
  Index epochs = 10;
  std::uint64_t seed = 0;
  std::optional<double> target_loss;
};

struct RichardsonOptions {
  /// When set, eta >= 2 / top_eigenvalue is rejected (unpreconditioned runs).
  std::optional<double> top_eigenvalue;
  EpochObserver observer;
  /// Called after every update with the step number and current iterate;
  /// returning false stops the iteration.
  std::function<bool(Index, const Matrix&)> on_step;
};

struct LinearFit {
  LinearModel model;
  TrainReport report;
  EigenSystem eigensystem;  // set by eigenpro_linear_sgd
};

struct KernelFit {
  KernelModel model;
  TrainReport report;
  EigenSystem eigensystem;  // set by eigenpro_kernel_sgd
};

/// Full-gradient iteration alpha <- alpha - eta P (H alpha - b) with
/// H = X^T X / n, b = X^T Y / n, alpha = 0 initially. One record per step.
/// Throws DivergenceError when the loss exceeds 1e3 times its initial value.
LinearFit richardson_gd(const Matrix& X, const Matrix& Y, double eta, Index steps,
                        const LinearPreconditioner* P = nullptr,
                        const RichardsonOptions& options = {});

/// Mini-batch SGD on (1/n)|X alpha - Y|^2 with an optional preconditioner.
/// Each epoch shuffles the rows (seeded per epoch) and walks them in batches
/// of m; the last batch may be shorter. P == nullptr is the plain baseline.
LinearFit sgd_linear(const Matrix& X, const Matrix& Y, double eta, const LinearPreconditioner* P,
                     const SgdSchedule& schedule, const TrainHooks& hooks = {});

/// Kernel SGD with the split update
///   alpha_batch -= eta g,  alpha += eta D K_batch^T g,  g = (K_batch alpha - Y_batch) / m.
/// P == nullptr (or rank 0) is plain kernel SGD.
KernelFit sgd_kernel(const KernelSpec& spec, const Matrix& X, const Matrix& Y, double eta,
                     const KernelPreconditioner* P, const SgdSchedule& schedule,
                     const TrainHooks& hooks = {});

/// Builds the eigensystem and preconditioner from `config`, picks the step
/// size, and runs sgd_linear. k = 0 gives plain SGD with its own safe step.
LinearFit eigenpro_linear_sgd(const Matrix& X, const Matrix& Y, const TrainConfig& config,
                              const TrainHooks& hooks = {});

/// Kernel counterpart of eigenpro_linear_sgd (kappa = 1 for these kernels).
KernelFit eigenpro_kernel_sgd(const KernelSpec& spec, const Matrix& X, const Matrix& Y,
                              const TrainConfig& config, const TrainHooks& hooks = {});

/// Step size chosen by `config.eta` for an eigensystem; kind selects the
/// logarithmic term of the bound.
double select_step_size(const TrainConfig& config, const EigenSystem& es, Index m, double kappa,
                        BoundKind kind);

}  // namespace eigenpro

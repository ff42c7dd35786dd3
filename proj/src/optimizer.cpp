#include "eigenpro/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "eigenpro/csv.hpp"
#include "eigenpro/error.hpp"
#include "eigenpro/log.hpp"
#include "eigenpro/random.hpp"
#include "eigenpro/stepsize.hpp"

namespace eigenpro {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kDivergenceFactor = 1e3;
constexpr double kKernelCacheBytes = 256.0 * 1024 * 1024;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_training_shapes(const Matrix& X, const Matrix& Y) {
  require(X.rows() > 0, "training set is empty");
  require(X.rows() == Y.rows(), "X has " + std::to_string(X.rows()) + " rows but Y has " +
                                    std::to_string(Y.rows()));
  require(Y.cols() > 0, "targets have no columns");
}

void check_eval(const TrainHooks& hooks, Index feature_dim, Index outputs) {
  require((hooks.eval_X == nullptr) == (hooks.eval_Y == nullptr),
          "eval features and targets must be given together");
  if (!hooks.eval_X) return;
  require(hooks.eval_X->rows() == hooks.eval_Y->rows(), "eval X and Y row counts differ");
  require(hooks.eval_X->cols() == feature_dim, "eval features have the wrong dimension");
  require(hooks.eval_Y->cols() == outputs, "eval targets have the wrong number of outputs");
}

void check_divergence(double eta, double loss, double initial) {
  if (!std::isfinite(loss) || loss > kDivergenceFactor * std::max(initial, 1e-300))
    throw DivergenceError(eta, loss, initial);
}

void check_schedule(const SgdSchedule& s, Index n, double eta) {
  require(std::isfinite(eta) && eta > 0.0, "step size eta must be positive");
  require(s.m >= 1 && s.m <= n, "mini-batch size m=" + std::to_string(s.m) +
                                    " must be in [1, n=" + std::to_string(n) + "]");
  require(s.epochs >= 0, "epoch count must be non-negative");
}

// Epoch-level bookkeeping shared by the SGD loops.
class EpochLog {
 public:
  EpochLog(TrainReport& report, const TrainHooks& hooks, const SgdSchedule& schedule, double eta)
      : report_(report), hooks_(hooks), schedule_(schedule), eta_(eta), start_(Clock::now()) {}

  // Returns true when the target loss has been reached.
  bool record(Index epoch, const Matrix& train_pred, const Matrix& Y,
              const std::optional<Matrix>& eval_pred, const Matrix& alpha) {
    EpochRecord r;
    r.epoch = epoch;
    r.train_loss = squared_loss(train_pred, Y);
    check_divergence(eta_, r.train_loss, report_.initial_train_loss);
    if (eval_pred) {
      r.eval_loss = squared_loss(*eval_pred, *hooks_.eval_Y);
      r.metric = task_metric(hooks_.task, *eval_pred, *hooks_.eval_Y);
    } else {
      r.metric = task_metric(hooks_.task, train_pred, Y);
    }
    r.alpha_norm = alpha.norm();
    r.seconds = seconds_since(start_);
    report_.records.push_back(r);
    if (hooks_.observer) hooks_.observer(r);
    if (schedule_.target_loss && r.train_loss <= *schedule_.target_loss) {
      report_.epochs_to_target = epoch;
      return true;
    }
    return false;
  }

 private:
  TrainReport& report_;
  const TrainHooks& hooks_;
  const SgdSchedule& schedule_;
  double eta_;
  Clock::time_point start_;
};

std::vector<Index> epoch_order(Index n, std::uint64_t seed, Index epoch) {
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng(derive_seed(derive_seed(seed, "shuffle"), static_cast<std::uint64_t>(epoch)));
  rng.shuffle(order);
  return order;
}

Matrix linear_gradient(const Matrix& Xb, const Matrix& Yb, const Matrix& alpha) {
  const Matrix residual = Xb * alpha - Yb;
  return Xb.transpose() * residual / static_cast<double>(Xb.rows());
}

double max_row_norm2(const Matrix& X) { return X.rowwise().squaredNorm().maxCoeff(); }

}  // namespace

Matrix LinearModel::predict_features(const Matrix& F) const {
  require(F.cols() == alpha.rows(), "model expects " + std::to_string(alpha.rows()) +
                                        " features, got " + std::to_string(F.cols()));
  return F * alpha;
}

Matrix LinearModel::predict(const Matrix& X) const {
  if (feature_map.is_identity()) return predict_features(X);
  return predict_features(feature_map.transform(X));
}

Matrix kernel_times(const KernelSpec& spec, const Matrix& A, const Matrix& B, const Matrix& alpha,
                    Index block_rows) {
  require(A.cols() == B.cols(), "kernel_times: dimension mismatch");
  require(alpha.rows() == B.rows(), "kernel_times: alpha has the wrong number of rows");
  require(block_rows >= 1, "kernel_times: block size must be positive");
  Matrix out(A.rows(), alpha.cols());
  for (Index start = 0; start < A.rows(); start += block_rows) {
    const Index len = std::min(block_rows, A.rows() - start);
    const Matrix block = A.middleRows(start, len);
    out.middleRows(start, len) = kernel_matrix(spec, block, B) * alpha;
  }
  return out;
}

Matrix KernelModel::predict(const Matrix& X) const {
  require(X.cols() == training_points.cols(),
          "model expects inputs of dimension " + std::to_string(training_points.cols()));
  return kernel_times(spec, X, training_points, alpha);
}

LinearFit richardson_gd(const Matrix& X, const Matrix& Y, double eta, Index steps,
                        const LinearPreconditioner* P, const RichardsonOptions& options) {
  check_training_shapes(X, Y);
  require(std::isfinite(eta) && eta > 0.0, "step size eta must be positive");
  require(steps >= 0, "step count must be non-negative");
  if (P) require(P->dim() == X.cols(), "preconditioner dimension does not match X");
  if (!P) {
    if (options.top_eigenvalue)
      require(eta < 2.0 / *options.top_eigenvalue,
              "eta=" + std::to_string(eta) + " violates eta < 2/lambda_1 = " +
                  std::to_string(2.0 / *options.top_eigenvalue));
    else
      warn("richardson_gd: lambda_1 unknown, convergence condition eta < 2/lambda_1 unchecked");
  }

  const double n = static_cast<double>(X.rows());
  LinearFit fit;
  fit.model.alpha = Matrix::Zero(X.cols(), Y.cols());
  TrainReport& report = fit.report;
  report.step_size = eta;
  report.hyperparameters = {{"method", "richardson"}, {"eta", csv::format_double(eta)},
                            {"steps", std::to_string(steps)},
                            {"preconditioned", P ? "yes" : "no"}};

  Matrix& alpha = fit.model.alpha;
  Matrix residual = -Y;
  report.initial_train_loss = residual.squaredNorm() / n;
  const auto start = Clock::now();
  for (Index t = 1; t <= steps; ++t) {
    const auto step_start = Clock::now();
    Matrix g = X.transpose() * residual / n;
    if (P) g = P->apply(g);
    alpha -= eta * g;
    report.step_seconds += seconds_since(step_start);
    ++report.steps;

    residual = X * alpha - Y;
    EpochRecord r;
    r.epoch = t;
    r.train_loss = residual.squaredNorm() / n;
    r.metric = r.train_loss;
    r.alpha_norm = alpha.norm();
    r.seconds = seconds_since(start);
    check_divergence(eta, r.train_loss, report.initial_train_loss);
    report.records.push_back(r);
    if (options.observer) options.observer(r);
    if (options.on_step && !options.on_step(t, alpha)) break;
  }
  return fit;
}

LinearFit sgd_linear(const Matrix& X, const Matrix& Y, double eta, const LinearPreconditioner* P,
                     const SgdSchedule& schedule, const TrainHooks& hooks) {
  check_training_shapes(X, Y);
  check_schedule(schedule, X.rows(), eta);
  check_eval(hooks, X.cols(), Y.cols());
  if (P) require(P->dim() == X.cols(), "preconditioner dimension does not match X");

  const Index n = X.rows();
  LinearFit fit;
  Matrix& alpha = fit.model.alpha;
  alpha = Matrix::Zero(X.cols(), Y.cols());
  TrainReport& report = fit.report;
  report.step_size = eta;
  report.initial_train_loss = Y.squaredNorm() / static_cast<double>(n);

  EpochLog log(report, hooks, schedule, eta);
  for (Index epoch = 1; epoch <= schedule.epochs; ++epoch) {
    const auto order = epoch_order(n, schedule.seed, epoch);
    for (Index begin = 0; begin < n; begin += schedule.m) {
      const Index len = std::min(schedule.m, n - begin);
      const std::vector<Index> rows(order.begin() + begin, order.begin() + begin + len);
      const auto step_start = Clock::now();
      const Matrix Xb = X(rows, Eigen::all);
      const Matrix Yb = Y(rows, Eigen::all);
      Matrix g = linear_gradient(Xb, Yb, alpha);
      if (P) g = P->apply(g);
      alpha -= eta * g;
      report.step_seconds += seconds_since(step_start);
      ++report.steps;
    }
    std::optional<Matrix> eval_pred;
    if (hooks.eval_X) eval_pred = *hooks.eval_X * alpha;
    if (log.record(epoch, X * alpha, Y, eval_pred, alpha)) break;
  }
  return fit;
}

KernelFit sgd_kernel(const KernelSpec& spec, const Matrix& X, const Matrix& Y, double eta,
                     const KernelPreconditioner* P, const SgdSchedule& schedule,
                     const TrainHooks& hooks) {
  spec.validate();
  check_training_shapes(X, Y);
  check_schedule(schedule, X.rows(), eta);
  check_eval(hooks, X.cols(), Y.cols());
  if (P) require(P->eigensystem().dim() == X.rows(), "preconditioner does not match X");
  const bool preconditioned = P && P->eigensystem().rank() > 0;

  const Index n = X.rows();
  KernelFit fit;
  fit.model.training_points = X;
  fit.model.spec = spec;
  Matrix& alpha = fit.model.alpha;
  alpha = Matrix::Zero(n, Y.cols());
  TrainReport& report = fit.report;
  report.step_size = eta;
  report.initial_train_loss = Y.squaredNorm() / static_cast<double>(n);

  const double nd = static_cast<double>(n);
  const bool cached = nd * nd * sizeof(double) <= kKernelCacheBytes;
  Matrix K;
  if (cached) K = kernel_matrix(spec, X, X);
  std::optional<Matrix> K_eval;
  if (hooks.eval_X &&
      static_cast<double>(hooks.eval_X->rows()) * nd * sizeof(double) <= kKernelCacheBytes)
    K_eval = kernel_matrix(spec, *hooks.eval_X, X);

  EpochLog log(report, hooks, schedule, eta);
  for (Index epoch = 1; epoch <= schedule.epochs; ++epoch) {
    const auto order = epoch_order(n, schedule.seed, epoch);
    for (Index begin = 0; begin < n; begin += schedule.m) {
      const Index len = std::min(schedule.m, n - begin);
      const std::vector<Index> rows(order.begin() + begin, order.begin() + begin + len);
      const auto step_start = Clock::now();
      Matrix Kb;
      if (cached) {
        Kb = K(rows, Eigen::all);
      } else {
        const Matrix Xb = X(rows, Eigen::all);
        Kb = kernel_matrix(spec, Xb, X);
      }
      const Matrix g = (Kb * alpha - Y(rows, Eigen::all)) / static_cast<double>(len);
      if (preconditioned) alpha += eta * P->correction(Kb.transpose() * g);
      for (Index i = 0; i < len; ++i)
        alpha.row(rows[static_cast<std::size_t>(i)]) -= eta * g.row(i);
      report.step_seconds += seconds_since(step_start);
      ++report.steps;
    }
    const Matrix train_pred = cached ? Matrix(K * alpha) : kernel_times(spec, X, X, alpha);
    std::optional<Matrix> eval_pred;
    if (K_eval) eval_pred = *K_eval * alpha;
    else if (hooks.eval_X) eval_pred = kernel_times(spec, *hooks.eval_X, X, alpha);
    if (log.record(epoch, train_pred, Y, eval_pred, alpha)) break;
  }
  return fit;
}

double select_step_size(const TrainConfig& config, const EigenSystem& es, Index m, double kappa,
                        BoundKind kind) {
  switch (config.eta.kind) {
    case StepRule::Kind::fixed:
      return config.eta.value;
    case StepRule::Kind::auto_heuristic: {
      StepSizeOptions opts;
      opts.kind = kind;
      opts.heuristic_constant = config.heuristic_constant;
      return auto_step_size(es, m, kappa, config.delta, StepMode::heuristic, opts);
    }
    case StepRule::Kind::auto_bound:
      break;
  }
  StepSizeOptions opts;
  opts.kind = kind;
  opts.dim_term = config.intrinsic_dim;
  return auto_step_size(es, m, kappa, config.delta, StepMode::bound, opts);
}

namespace {

SgdSchedule schedule_from(const TrainConfig& c) {
  return {c.m, c.epochs, c.seed, c.target_loss};
}

}  // namespace

LinearFit eigenpro_linear_sgd(const Matrix& X, const Matrix& Y, const TrainConfig& config,
                              const TrainHooks& hooks) {
  check_training_shapes(X, Y);
  config.validate();
  require(config.m <= X.rows(), "mini-batch size m exceeds n");
  EigenSystem es = config.eigensolver == EigenMethod::rsvd
                       ? rsvd(X, config.k, config.M, config.seed)
                       : nsvd(X, config.k, config.M, config.seed);
  const double kappa = max_row_norm2(X);
  require(kappa > 0.0, "all training rows are zero");
  const double eta = select_step_size(config, es, config.m, kappa, BoundKind::linear);
  const LinearPreconditioner P = LinearPreconditioner::build(std::move(es), config.tau_value());

  LinearFit fit = sgd_linear(X, Y, eta, &P, schedule_from(config), hooks);
  fit.report.hyperparameters = config.describe();
  fit.report.hyperparameters.emplace_back("kappa", csv::format_double(kappa));
  fit.report.hyperparameters.emplace_back("lambda_tail", csv::format_double(P.eigensystem().tail));
  fit.report.hyperparameters.emplace_back("eta_value", csv::format_double(eta));
  fit.eigensystem = P.eigensystem();
  return fit;
}

KernelFit eigenpro_kernel_sgd(const KernelSpec& spec, const Matrix& X, const Matrix& Y,
                              const TrainConfig& config, const TrainHooks& hooks) {
  check_training_shapes(X, Y);
  config.validate();
  require(config.m <= X.rows(), "mini-batch size m exceeds n");
  EigenSystem es = kernel_eigensystem(spec, X, config.k, config.M, config.seed, config.eigensolver);
  const double eta = select_step_size(config, es, config.m, 1.0, BoundKind::kernel);
  const KernelPreconditioner P = KernelPreconditioner::build(std::move(es), config.tau_value());

  KernelFit fit = sgd_kernel(spec, X, Y, eta, &P, schedule_from(config), hooks);
  fit.report.hyperparameters = config.describe();
  fit.report.hyperparameters.emplace_back("lambda_tail", csv::format_double(P.eigensystem().tail));
  fit.report.hyperparameters.emplace_back("eta_value", csv::format_double(eta));
  fit.eigensystem = P.eigensystem();
  return fit;
}

}  // namespace eigenpro

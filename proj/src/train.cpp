#include "eigenpro/train.hpp"

#include "eigenpro/error.hpp"
#include "eigenpro/random.hpp"

namespace eigenpro {

Matrix Model::predict(const Matrix& X) const {
  const Matrix Z = preprocess.apply(X);
  return std::visit([&](const auto& p) { return p.predict(Z); }, predictor);
}

const Matrix& Model::alpha() const {
  return std::visit([](const auto& p) -> const Matrix& { return p.alpha; }, predictor);
}

Index Model::outputs() const { return alpha().cols(); }

TrainResult train(const TrainConfig& config, const Dataset& train_set, const Dataset* eval_set,
                  const TrainOptions& options) {
  train_set.validate();
  require(train_set.rows() > 0, "training set is empty");
  if (eval_set) {
    eval_set->validate();
    require(eval_set->features() == train_set.features(),
            "eval set has " + std::to_string(eval_set->features()) + " features, training set " +
                std::to_string(train_set.features()));
    require(eval_set->outputs() == train_set.outputs(),
            "eval set targets do not match the training targets");
  }
  config.validate();

  TrainResult result;
  Model& model = result.model;
  model.task = train_set.task;
  model.classes = train_set.classes;
  model.preprocess = Preprocessor::fit(train_set.X, options.preprocess);
  const Matrix X = model.preprocess.apply(train_set.X);
  require(X.cols() > 0, "no features left after preprocessing");
  Matrix X_eval;
  if (eval_set) X_eval = model.preprocess.apply(eval_set->X);

  const Index n = X.rows();
  std::vector<std::string> notes;
  TrainConfig resolved = config;
  if (resolved.mode == TrainMode::rbf && resolved.d > n) {
    notes.push_back("rbf center count d=" + std::to_string(resolved.d) + " reduced to n=" +
                    std::to_string(n));
    resolved.d = n;
  }
  Index feature_dim = X.cols();
  if (resolved.mode == TrainMode::rff || resolved.mode == TrainMode::rbf) feature_dim = resolved.d;
  if (resolved.mode == TrainMode::primal_kernel) feature_dim = n;
  resolved = resolved.resolved(n, feature_dim, &notes);
  model.config = resolved;

  TrainHooks hooks;
  hooks.task = train_set.task;
  hooks.observer = options.observer;

  if (resolved.mode == TrainMode::primal_kernel) {
    if (eval_set) {
      hooks.eval_X = &X_eval;
      hooks.eval_Y = &eval_set->Y;
    }
    KernelFit fit = eigenpro_kernel_sgd(resolved.kernel, X, train_set.Y, resolved, hooks);
    model.predictor = std::move(fit.model);
    model.eigensystem = std::move(fit.eigensystem);
    result.report = std::move(fit.report);
  } else {
    FeatureMap map;
    if (resolved.mode == TrainMode::rff)
      map = FeatureMap(RffMap::generate(X.cols(), resolved.d, resolved.kernel.bandwidth,
                                        derive_seed(resolved.seed, "rff")));
    else if (resolved.mode == TrainMode::rbf)
      map = FeatureMap(RbfMap::sample_centers(X, resolved.d, resolved.kernel,
                                              derive_seed(resolved.seed, "rbf")));
    const Matrix F = map.is_identity() ? X : map.transform(X);
    Matrix F_eval;
    if (eval_set) {
      F_eval = map.is_identity() ? X_eval : map.transform(X_eval);
      hooks.eval_X = &F_eval;
      hooks.eval_Y = &eval_set->Y;
    }
    LinearFit fit = eigenpro_linear_sgd(F, train_set.Y, resolved, hooks);
    fit.model.feature_map = std::move(map);
    model.predictor = std::move(fit.model);
    model.eigensystem = std::move(fit.eigensystem);
    result.report = std::move(fit.report);
  }
  result.report.notes = std::move(notes);
  return result;
}

}  // namespace eigenpro

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "eigenpro/config.hpp"
#include "eigenpro/data.hpp"
#include "eigenpro/optimizer.hpp"

namespace eigenpro {

/// A trained predictor together with everything needed to apply it to raw
/// inputs: preprocessing, feature map (inside LinearModel) or training points
/// (inside KernelModel), and the class list for classification.
struct Model {
  TrainConfig config;
  Task task = Task::regression;
  std::vector<double> classes;
  Preprocessor preprocess;
  std::variant<LinearModel, KernelModel> predictor;
  EigenSystem eigensystem;

  /// Raw rows in, outputs (one column per target or class) out.
  Matrix predict(const Matrix& X) const;
  Index input_dim() const { return preprocess.input_dim; }
  Index outputs() const;
  const Matrix& alpha() const;
};

struct TrainResult {
  Model model;
  TrainReport report;
};

struct TrainOptions {
  Preprocessor::Kind preprocess = Preprocessor::Kind::none;
  EpochObserver observer;
};

/// Resolves the config against the data (notes go to report.notes), fits the
/// preprocessing on `train`, builds the feature map for rff / rbf, and runs
/// EigenPro in the chosen mode. `eval` may be null.
TrainResult train(const TrainConfig& config, const Dataset& train, const Dataset* eval,
                  const TrainOptions& options = {});

}  // namespace eigenpro

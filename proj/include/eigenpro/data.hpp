#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "eigenpro/common.hpp"
#include "eigenpro/metrics.hpp"

namespace eigenpro {

struct Dataset {
  Matrix X;  // n x p
  Matrix Y;  // n x c (one-hot rows for classification)
  Task task = Task::regression;
  std::vector<std::string> feature_names;
  std::vector<std::string> target_names;
  std::vector<double> classes;  // original label of each one-hot column

  Index rows() const { return X.rows(); }
  Index features() const { return X.cols(); }
  Index outputs() const { return Y.cols(); }

  /// Row counts agree, values finite, names sized to match. Throws DataError.
  void validate() const;
};

struct CsvLoadOptions {
  /// Target column indices; negative values count from the end (-1 = last).
  std::vector<Index> target_columns{-1};
  bool has_header = false;
  char delimiter = ',';
  Task task = Task::regression;
};

Dataset load_csv(const std::filesystem::path& path, const CsvLoadOptions& options = {});
Dataset parse_csv_dataset(std::string_view text, const CsvLoadOptions& options = {});

/// "label idx:value idx:value ..." with 1-based indices. Feature count is
/// the largest index seen unless `feature_count` is larger.
Dataset load_libsvm(const std::filesystem::path& path, Task task = Task::regression,
                    Index feature_count = 0);
Dataset parse_libsvm_dataset(std::string_view text, Task task = Task::regression,
                             Index feature_count = 0);

/// Header row of feature then target names, values in shortest round-trip
/// form. Classification targets are written as the original class label.
void write_csv(const Dataset& ds, const std::filesystem::path& path, char delimiter = ',');
std::string format_csv(const Dataset& ds, char delimiter = ',');

/// Per-feature affine map fitted on one set and applied to others.
struct Preprocessor {
  enum class Kind { none, zscore, unit };
  Kind kind = Kind::none;
  std::vector<Index> kept;  // input columns retained, in order
  Vector shift;             // subtracted
  Vector scale;             // then multiplied
  Index input_dim = 0;

  static Preprocessor fit(const Matrix& X, Kind kind);
  Matrix apply(const Matrix& X) const;
};

std::string to_string(Preprocessor::Kind kind);
Preprocessor::Kind parse_preprocess(const std::string& name);

/// Mean 0, population std 1 per feature. Constant features are dropped
/// with a warning.
Dataset zscore(const Dataset& ds);

/// Min 0, max 1 per feature; constant features become 0.
Dataset rescale_unit(const Dataset& ds);

RowVector one_hot(Index label, Index classes);
Matrix one_hot(const std::vector<Index>& labels, Index classes);

/// Maps a single label column to one-hot rows over its sorted distinct values.
Dataset to_classification(const Dataset& ds);

/// Same with a fixed class list (e.g. from the training set); labels outside
/// it raise DataError.
Dataset to_classification(const Dataset& ds, const std::vector<double>& classes);

/// M distinct rows chosen with derive_seed(seed, "subsample").
Dataset subsample(const Dataset& ds, Index M, std::uint64_t seed);

struct SyntheticProblem {
  Dataset data;
  Vector alpha_star;
};

/// X = sqrt(n) Q diag(sqrt(lambda)) V^T with Q (n x d) and V (d x d) random
/// orthonormal, so X^T X / n has exactly the prescribed spectrum.
/// alpha_star ~ N(0, I), y = X alpha_star + noise_std * N(0, 1).
SyntheticProblem synth_spectrum(Index n, Index d, const Vector& eigenvalues, double noise_std,
                                std::uint64_t seed);

}  // namespace eigenpro

#include "eigenpro/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "eigenpro/csv.hpp"
#include "eigenpro/error.hpp"
#include "eigenpro/log.hpp"
#include "eigenpro/random.hpp"

namespace eigenpro {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> default_names(const char* prefix, Index count) {
  std::vector<std::string> names;
  for (Index i = 0; i < count; ++i) names.push_back(prefix + std::to_string(i + 1));
  return names;
}

Dataset select_rows(const Dataset& ds, const std::vector<Index>& rows) {
  Dataset out = ds;
  out.X = ds.X(rows, Eigen::all);
  out.Y = ds.Y(rows, Eigen::all);
  return out;
}

}  // namespace

void Dataset::validate() const {
  if (X.rows() != Y.rows())
    throw DataError("dataset: X has " + std::to_string(X.rows()) + " rows, Y has " +
                    std::to_string(Y.rows()));
  if (!X.allFinite() || !Y.allFinite()) throw DataError("dataset contains non-finite values");
  if (!feature_names.empty() && static_cast<Index>(feature_names.size()) != X.cols())
    throw DataError("dataset: feature name count does not match columns");
  if (task == Task::classification_onehot && static_cast<Index>(classes.size()) != Y.cols())
    throw DataError("dataset: class list does not match one-hot width");
}

Dataset parse_csv_dataset(std::string_view text, const CsvLoadOptions& options) {
  const auto rows = csv::parse(text, options.delimiter);
  if (rows.empty()) throw DataError("line 1: CSV input is empty");
  const std::size_t width = rows.front().fields.size();
  for (const auto& r : rows)
    if (r.fields.size() != width)
      throw DataError("line " + std::to_string(r.line) + ": expected " + std::to_string(width) +
                      " fields, found " + std::to_string(r.fields.size()));

  require(!options.target_columns.empty(), "at least one target column is required");
  const Index cols = static_cast<Index>(width);
  std::vector<bool> is_target(width, false);
  std::vector<Index> targets;
  for (Index t : options.target_columns) {
    const Index c = t < 0 ? cols + t : t;
    if (c < 0 || c >= cols)
      throw InvalidArgument("target column " + std::to_string(t) + " is out of range for " +
                            std::to_string(cols) + " columns");
    if (!is_target[static_cast<std::size_t>(c)]) targets.push_back(c);
    is_target[static_cast<std::size_t>(c)] = true;
  }
  std::vector<Index> features;
  for (Index c = 0; c < cols; ++c)
    if (!is_target[static_cast<std::size_t>(c)]) features.push_back(c);

  const std::size_t first = options.has_header ? 1 : 0;
  const Index n = static_cast<Index>(rows.size() - first);
  if (n == 0) throw DataError("line " + std::to_string(rows.front().line) + ": no data rows");

  Dataset ds;
  ds.X.resize(n, static_cast<Index>(features.size()));
  ds.Y.resize(n, static_cast<Index>(targets.size()));
  for (Index i = 0; i < n; ++i) {
    const auto& r = rows[first + static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < features.size(); ++j)
      ds.X(i, static_cast<Index>(j)) =
          csv::parse_double(r.fields[static_cast<std::size_t>(features[j])], r.line);
    for (std::size_t j = 0; j < targets.size(); ++j)
      ds.Y(i, static_cast<Index>(j)) =
          csv::parse_double(r.fields[static_cast<std::size_t>(targets[j])], r.line);
  }
  if (options.has_header) {
    for (Index c : features) ds.feature_names.push_back(rows.front().fields[static_cast<std::size_t>(c)]);
    for (Index c : targets) ds.target_names.push_back(rows.front().fields[static_cast<std::size_t>(c)]);
  } else {
    ds.feature_names = default_names("x", ds.X.cols());
    ds.target_names = default_names("y", ds.Y.cols());
  }
  if (options.task == Task::classification_onehot) ds = to_classification(ds);
  ds.validate();
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const CsvLoadOptions& options) {
  try {
    return parse_csv_dataset(read_file(path), options);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

Dataset parse_libsvm_dataset(std::string_view text, Task task, Index feature_count) {
  std::vector<double> labels;
  std::vector<std::vector<std::pair<Index, double>>> entries;
  Index max_index = 0;
  long line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::string token;
    if (!(tokens >> token)) continue;
    labels.push_back(csv::parse_double(token, line_no));
    auto& row = entries.emplace_back();
    while (tokens >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos)
        throw DataError("line " + std::to_string(line_no) + ": expected index:value, got '" +
                        token + "'");
      const double idx = csv::parse_double(std::string_view(token).substr(0, colon), line_no);
      if (idx < 1 || idx != std::floor(idx))
        throw DataError("line " + std::to_string(line_no) + ": feature index must be >= 1");
      const Index j = static_cast<Index>(idx);
      row.emplace_back(j - 1, csv::parse_double(std::string_view(token).substr(colon + 1), line_no));
      max_index = std::max(max_index, j);
    }
  }
  if (labels.empty()) throw DataError("line 1: libsvm input is empty");

  Dataset ds;
  const Index p = std::max(max_index, feature_count);
  ds.X = Matrix::Zero(static_cast<Index>(labels.size()), p);
  ds.Y.resize(static_cast<Index>(labels.size()), 1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ds.Y(static_cast<Index>(i), 0) = labels[i];
    for (const auto& [j, v] : entries[i]) ds.X(static_cast<Index>(i), j) = v;
  }
  ds.feature_names = default_names("x", p);
  ds.target_names = {"y"};
  if (task == Task::classification_onehot) ds = to_classification(ds);
  ds.validate();
  return ds;
}

Dataset load_libsvm(const std::filesystem::path& path, Task task, Index feature_count) {
  try {
    return parse_libsvm_dataset(read_file(path), task, feature_count);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string format_csv(const Dataset& ds, char delimiter) {
  ds.validate();
  const auto fnames = ds.feature_names.empty() ? default_names("x", ds.X.cols()) : ds.feature_names;
  std::vector<std::string> tnames = ds.target_names;
  const bool labels = ds.task == Task::classification_onehot;
  const Index target_cols = labels ? 1 : ds.Y.cols();
  if (static_cast<Index>(tnames.size()) != target_cols)
    tnames = target_cols == 1 ? std::vector<std::string>{"y"} : default_names("y", target_cols);

  std::string out;
  auto put_row = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out.push_back(delimiter);
      out += csv::escape(fields[i], delimiter);
    }
    out.push_back('\n');
  };
  std::vector<std::string> header = fnames;
  header.insert(header.end(), tnames.begin(), tnames.end());
  put_row(header);
  for (Index i = 0; i < ds.rows(); ++i) {
    std::vector<std::string> fields;
    for (Index j = 0; j < ds.X.cols(); ++j) fields.push_back(csv::format_double(ds.X(i, j)));
    if (labels) {
      Index arg = 0;
      ds.Y.row(i).maxCoeff(&arg);
      fields.push_back(csv::format_double(ds.classes[static_cast<std::size_t>(arg)]));
    } else {
      for (Index j = 0; j < ds.Y.cols(); ++j) fields.push_back(csv::format_double(ds.Y(i, j)));
    }
    put_row(fields);
  }
  return out;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path, char delimiter) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << format_csv(ds, delimiter);
  if (!out) throw DataError("error writing " + path.string());
}

std::string to_string(Preprocessor::Kind kind) {
  switch (kind) {
    case Preprocessor::Kind::none: return "none";
    case Preprocessor::Kind::zscore: return "zscore";
    case Preprocessor::Kind::unit: return "unit";
  }
  return "none";
}

Preprocessor::Kind parse_preprocess(const std::string& name) {
  if (name == "none") return Preprocessor::Kind::none;
  if (name == "zscore") return Preprocessor::Kind::zscore;
  if (name == "unit" || name == "rescale") return Preprocessor::Kind::unit;
  throw InvalidArgument("unknown preprocessing '" + name + "' (expected none, zscore or unit)");
}

Preprocessor Preprocessor::fit(const Matrix& X, Kind kind) {
  require(X.rows() > 0, "cannot fit preprocessing on an empty matrix");
  Preprocessor p;
  p.kind = kind;
  p.input_dim = X.cols();
  std::vector<double> shift, scale;
  const double n = static_cast<double>(X.rows());
  for (Index j = 0; j < X.cols(); ++j) {
    const auto col = X.col(j);
    if (kind == Kind::none) {
      p.kept.push_back(j);
      shift.push_back(0.0);
      scale.push_back(1.0);
    } else if (kind == Kind::zscore) {
      const double mean = col.sum() / n;
      const double var = (col.array() - mean).square().sum() / n;
      if (!(var > 0.0)) {
        warn("dropping constant feature " + std::to_string(j + 1) + " before z-scoring");
        continue;
      }
      p.kept.push_back(j);
      shift.push_back(mean);
      scale.push_back(1.0 / std::sqrt(var));
    } else {
      const double lo = col.minCoeff();
      const double hi = col.maxCoeff();
      p.kept.push_back(j);
      shift.push_back(lo);
      scale.push_back(hi > lo ? 1.0 / (hi - lo) : 0.0);
    }
  }
  p.shift = Eigen::Map<const Vector>(shift.data(), static_cast<Index>(shift.size()));
  p.scale = Eigen::Map<const Vector>(scale.data(), static_cast<Index>(scale.size()));
  return p;
}

Matrix Preprocessor::apply(const Matrix& X) const {
  require(X.cols() == input_dim, "preprocessing expects " + std::to_string(input_dim) +
                                     " features, got " + std::to_string(X.cols()));
  if (kind == Kind::none) return X;
  Matrix out(X.rows(), static_cast<Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const Index jj = static_cast<Index>(j);
    out.col(jj) = (X.col(kept[j]).array() - shift[jj]) * scale[jj];
  }
  return out;
}

namespace {
Dataset transformed(const Dataset& ds, Preprocessor::Kind kind) {
  const Preprocessor p = Preprocessor::fit(ds.X, kind);
  Dataset out = ds;
  out.X = p.apply(ds.X);
  if (!ds.feature_names.empty()) {
    out.feature_names.clear();
    for (Index j : p.kept) out.feature_names.push_back(ds.feature_names[static_cast<std::size_t>(j)]);
  }
  return out;
}
}  // namespace

Dataset zscore(const Dataset& ds) { return transformed(ds, Preprocessor::Kind::zscore); }
Dataset rescale_unit(const Dataset& ds) { return transformed(ds, Preprocessor::Kind::unit); }

RowVector one_hot(Index label, Index classes) {
  require(classes >= 1, "one_hot needs at least one class");
  require(label >= 0 && label < classes, "label " + std::to_string(label) +
                                             " is out of range for " + std::to_string(classes) +
                                             " classes");
  RowVector row = RowVector::Zero(classes);
  row[label] = 1.0;
  return row;
}

Matrix one_hot(const std::vector<Index>& labels, Index classes) {
  Matrix out(static_cast<Index>(labels.size()), classes);
  for (std::size_t i = 0; i < labels.size(); ++i)
    out.row(static_cast<Index>(i)) = one_hot(labels[i], classes);
  return out;
}

Dataset to_classification(const Dataset& ds) {
  require(ds.Y.cols() == 1, "classification needs exactly one label column");
  std::map<double, Index> index;
  for (Index i = 0; i < ds.rows(); ++i) index.emplace(ds.Y(i, 0), 0);
  require(!index.empty(), "no labels");
  Dataset out = ds;
  out.classes.clear();
  for (auto& [label, id] : index) {
    id = static_cast<Index>(out.classes.size());
    out.classes.push_back(label);
  }
  std::vector<Index> ids(static_cast<std::size_t>(ds.rows()));
  for (Index i = 0; i < ds.rows(); ++i) ids[static_cast<std::size_t>(i)] = index.at(ds.Y(i, 0));
  out.Y = one_hot(ids, static_cast<Index>(out.classes.size()));
  out.task = Task::classification_onehot;
  return out;
}

Dataset to_classification(const Dataset& ds, const std::vector<double>& classes) {
  require(ds.Y.cols() == 1, "classification needs exactly one label column");
  require(!classes.empty(), "class list is empty");
  std::map<double, Index> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(classes[i], static_cast<Index>(i));
  std::vector<Index> ids(static_cast<std::size_t>(ds.rows()));
  for (Index i = 0; i < ds.rows(); ++i) {
    const auto it = index.find(ds.Y(i, 0));
    if (it == index.end())
      throw DataError("row " + std::to_string(i + 1) + ": label " + csv::format_double(ds.Y(i, 0)) +
                      " was not seen in training");
    ids[static_cast<std::size_t>(i)] = it->second;
  }
  Dataset out = ds;
  out.classes = classes;
  out.Y = one_hot(ids, static_cast<Index>(classes.size()));
  out.task = Task::classification_onehot;
  return out;
}

Dataset subsample(const Dataset& ds, Index M, std::uint64_t seed) {
  require(M >= 1 && M <= ds.rows(), "subsample size M=" + std::to_string(M) +
                                        " must be in [1, n=" + std::to_string(ds.rows()) + "]");
  Rng rng(derive_seed(seed, "subsample"));
  return select_rows(ds, rng.sample_without_replacement(ds.rows(), M));
}

SyntheticProblem synth_spectrum(Index n, Index d, const Vector& eigenvalues, double noise_std,
                                std::uint64_t seed) {
  require(d >= 1 && n >= d, "synth_spectrum needs n >= d >= 1");
  require(eigenvalues.size() == d, "need exactly d eigenvalues");
  require((eigenvalues.array() > 0.0).all() && eigenvalues.allFinite(),
          "eigenvalues must be positive and finite");
  require(noise_std >= 0.0 && std::isfinite(noise_std), "noise_std must be non-negative");

  using Dense = Eigen::MatrixXd;
  Rng rng(derive_seed(seed, "synth"));
  const Dense G = rng.gaussian_matrix(n, d);
  const Dense Q = Eigen::HouseholderQR<Dense>(G).householderQ() * Dense::Identity(n, d);
  const Dense R = rng.gaussian_matrix(d, d);
  const Dense V = Eigen::HouseholderQR<Dense>(R).householderQ() * Dense::Identity(d, d);

  SyntheticProblem out;
  const Vector root = (eigenvalues.array() * static_cast<double>(n)).sqrt();
  out.data.X = Q * root.asDiagonal() * V.transpose();
  out.alpha_star.resize(d);
  for (Index i = 0; i < d; ++i) out.alpha_star[i] = rng.normal();
  Vector y = out.data.X * out.alpha_star;
  if (noise_std > 0.0)
    for (Index i = 0; i < n; ++i) y[i] += noise_std * rng.normal();
  out.data.Y = y;
  out.data.task = Task::regression;
  out.data.feature_names = default_names("x", d);
  out.data.target_names = {"y"};
  return out;
}

}  // namespace eigenpro

#include "eigenpro/metrics.hpp"

#include "eigenpro/error.hpp"

namespace eigenpro {

std::string to_string(Task task) {
  return task == Task::classification_onehot ? "classification" : "regression";
}

Task parse_task(const std::string& name) {
  if (name == "classification" || name == "classification_onehot")
    return Task::classification_onehot;
  if (name == "regression") return Task::regression;
  throw InvalidArgument("unknown task '" + name + "' (expected classification or regression)");
}

namespace {
void check_shapes(const Matrix& a, const Matrix& b, const char* what) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          std::string(what) + ": shape mismatch (" + std::to_string(a.rows()) + "x" +
              std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
              std::to_string(b.cols()) + ")");
}
}  // namespace

double c_error(const Matrix& predictions, const Matrix& labels) {
  check_shapes(predictions, labels, "c_error");
  require(predictions.rows() > 0, "c_error: empty input");
  Index wrong = 0;
  for (Index i = 0; i < predictions.rows(); ++i) {
    Index p = 0, l = 0;
    predictions.row(i).maxCoeff(&p);
    labels.row(i).maxCoeff(&l);
    if (p != l) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(predictions.rows());
}

double mse(const Matrix& predictions, const Matrix& targets) {
  check_shapes(predictions, targets, "mse");
  require(predictions.size() > 0, "mse: empty input");
  return (predictions - targets).squaredNorm() / static_cast<double>(predictions.size());
}

double squared_loss(const Matrix& predictions, const Matrix& targets) {
  check_shapes(predictions, targets, "loss");
  require(predictions.rows() > 0, "loss: empty input");
  return (predictions - targets).squaredNorm() / static_cast<double>(predictions.rows());
}

double task_metric(Task task, const Matrix& predictions, const Matrix& targets) {
  return task == Task::classification_onehot ? c_error(predictions, targets)
                                             : mse(predictions, targets);
}

}  // namespace eigenpro

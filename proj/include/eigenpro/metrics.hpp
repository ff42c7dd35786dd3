#pragma once

#include <string>

#include "eigenpro/common.hpp"

namespace eigenpro {

/// Classification targets are one-hot rows; regression targets are real.
enum class Task { classification_onehot, regression };

std::string to_string(Task task);
Task parse_task(const std::string& name);

/// Fraction of rows whose argmax differs (first maximum wins ties).
double c_error(const Matrix& predictions, const Matrix& labels);

/// Mean squared deviation over all entries.
double mse(const Matrix& predictions, const Matrix& targets);

/// (1/n) sum_i |pred_i - target_i|^2, the least-squares objective.
double squared_loss(const Matrix& predictions, const Matrix& targets);

/// c_error for classification, mse for regression.
double task_metric(Task task, const Matrix& predictions, const Matrix& targets);

}  // namespace eigenpro

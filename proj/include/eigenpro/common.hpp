#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace eigenpro {

using Index = Eigen::Index;

// Row-major so that every sample (row) is contiguous; the kernel and feature
// loops in parallel.hpp rely on this layout.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::Matrix<double, 1, Eigen::Dynamic>;

}  // namespace eigenpro

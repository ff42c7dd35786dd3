#pragma once

#include <filesystem>
#include <iosfwd>

#include "eigenpro/train.hpp"

namespace eigenpro {

/// Plain-text model container, version 1.
///
///   eigenpro-model 1
///   config <key> <value>          one line per TrainConfig field
///   task <regression|classification>
///   classes <count> <v1> ...
///   preprocess <none|zscore|unit> <input_dim>
///   kept <count> <i1> ...
///   vector <name> <len>           followed by one line of values
///   matrix <name> <rows> <cols>   followed by one line per row
///   scalar <name> <value>
///   integer <name> <value>
///   end
///
/// Numbers use the shortest text that reads back to the same double, so a
/// saved model predicts bit-identically after loading. Vectors and matrices
/// present: shift, scale, alpha, eigenvalues, eigenvectors, and per mode
/// omega + phase (rff), centers (rbf) or training_points (primal_kernel).
void save_model(const Model& model, std::ostream& out);
void save_model(const Model& model, const std::filesystem::path& path);

/// Throws DataError on malformed input or unsupported versions.
Model load_model(std::istream& in);
Model load_model(const std::filesystem::path& path);

}  // namespace eigenpro

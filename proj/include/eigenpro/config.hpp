#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eigenpro/common.hpp"
#include "eigenpro/eigensolver.hpp"
#include "eigenpro/kernels.hpp"

namespace eigenpro {

enum class TrainMode { primal_kernel, rff, rbf, linear };

std::string to_string(TrainMode mode);
TrainMode parse_train_mode(std::string_view name);

/// auto_bound | auto_heuristic | a positive number.
struct StepRule {
  enum class Kind { auto_bound, auto_heuristic, fixed };
  Kind kind = Kind::auto_bound;
  double value = 0.0;

  static StepRule parse(std::string_view text);
  static StepRule fixed(double eta) { return {Kind::fixed, eta}; }
  std::string str() const;
};

/// Hyperparameters for every training mode. Defaults follow the reference
/// setting: m = 256, k = 160, M = 4800, tau = 1 for primal kernel training
/// and 1/4 for the feature-space (linear, rff, rbf) iteration.
struct TrainConfig {
  TrainMode mode = TrainMode::linear;
  KernelSpec kernel{KernelFamily::gaussian, 1.0};
  Index k = 160;
  Index M = 4800;
  Index m = 256;
  std::optional<double> tau;
  StepRule eta;
  Index epochs = 10;
  Index d = 2000;  // rff / rbf feature count
  std::uint64_t seed = 0;
  double delta = 0.01;
  EigenMethod eigensolver = EigenMethod::rsvd;
  double heuristic_constant = 1.0;
  double intrinsic_dim = 0.0;  // <= 0: estimated from the subsample
  std::optional<double> target_loss;

  double tau_value() const;

  /// Throws InvalidArgument on inconsistent values.
  void validate() const;

  /// Copy with M, m, k clamped to what an (n x feature_dim) problem allows;
  /// each adjustment is appended to `notes`.
  TrainConfig resolved(Index n, Index feature_dim, std::vector<std::string>* notes = nullptr) const;

  std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Sets one field from its flag / config-file name ("k", "M", "eta", ...).
/// Dashes and underscores in `key` are interchangeable.
void apply_setting(TrainConfig& config, std::string_view key, std::string_view value);

/// Reads `key = value` lines ('#' starts a comment) on top of `base`.
TrainConfig load_config_file(const std::filesystem::path& path, TrainConfig base = {});

/// Parses "k=0,tau=0.5" style override lists.
void apply_overrides(TrainConfig& config, std::string_view overrides);

}  // namespace eigenpro

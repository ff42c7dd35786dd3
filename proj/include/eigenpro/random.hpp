#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "eigenpro/common.hpp"

namespace eigenpro {

/// Derives an independent stream seed from a top-level seed and a role tag,
/// e.g. derive_seed(seed, "rff"). splitmix64 over seed ^ fnv1a64(tag).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded generator with a fully specified output stream.
///
/// The bit source is std::mt19937_64, whose sequence is fixed by the C++
/// standard. The distributions below are implemented here rather than taken
/// from <random>, whose distribution algorithms are implementation-defined:
///   uniform()   = (x >> 11) * 2^-53                       in [0, 1)
///   normal()    = Box-Muller, sqrt(-2 ln(1-u1)) cos(2 pi u2); the sine
///                 branch is cached for the next call
///   below(n)    = rejection sampling on the top bits, unbiased
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();
  std::uint64_t below(std::uint64_t n);

  /// Fisher-Yates shuffle, last index first.
  void shuffle(std::span<Index> values);

  /// Draws `count` distinct indices from [0, n) in sampled order.
  std::vector<Index> sample_without_replacement(Index n, Index count);

  /// Fills a matrix with i.i.d. N(0, 1) in row-major order.
  Matrix gaussian_matrix(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace eigenpro

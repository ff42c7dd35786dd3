// Serial reference loops against their OpenMP counterparts.
//   ./bench_parallel --benchmark_filter=kernel

#include <benchmark/benchmark.h>

#include "eigenpro/parallel.hpp"
#include "eigenpro/random.hpp"

namespace {

using namespace eigenpro;

struct KernelInputs {
  Matrix A, B;
  Vector an, bn;
  KernelSpec spec{KernelFamily::gaussian, 10.0};

  explicit KernelInputs(Index rows) {
    Rng rng(1);
    A = rng.gaussian_matrix(rows, 64);
    B = rng.gaussian_matrix(1024, 64);
    an = serial::squared_row_norms(A);
    bn = serial::squared_row_norms(B);
  }
};

struct RffInputs {
  Matrix omega, X;
  Vector phase;

  explicit RffInputs(Index rows) {
    Rng rng(2);
    omega = rng.gaussian_matrix(2048, 64);
    X = rng.gaussian_matrix(rows, 64);
    phase.resize(2048);
    for (Index i = 0; i < phase.size(); ++i) phase[i] = 6.283185307179586 * rng.uniform();
  }
};

template <bool Parallel>
void BM_KernelBlock(benchmark::State& state) {
  const KernelInputs in(state.range(0));
  Matrix out;
  for (auto _ : state) {
    if constexpr (Parallel)
      omp::kernel_block(in.spec, in.A, in.an, in.B, in.bn, out);
    else
      serial::kernel_block(in.spec, in.A, in.an, in.B, in.bn, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * in.A.rows() * in.B.rows());
}

template <bool Parallel>
void BM_KernelBlockSymmetric(benchmark::State& state) {
  const KernelInputs in(state.range(0));
  Matrix out;
  for (auto _ : state) {
    if constexpr (Parallel)
      omp::kernel_block_symmetric(in.spec, in.A, in.an, out);
    else
      serial::kernel_block_symmetric(in.spec, in.A, in.an, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * in.A.rows() * in.A.rows());
}

template <bool Parallel>
void BM_RffBlock(benchmark::State& state) {
  const RffInputs in(state.range(0));
  const double scale = std::sqrt(2.0 / 2048.0);
  Matrix out;
  for (auto _ : state) {
    if constexpr (Parallel)
      omp::rff_block(in.omega, in.phase, scale, in.X, out);
    else
      serial::rff_block(in.omega, in.phase, scale, in.X, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * in.X.rows() * in.omega.rows());
}

}  // namespace

BENCHMARK(BM_KernelBlock<false>)->Name("kernel_block/serial")->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelBlock<true>)->Name("kernel_block/omp")->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_KernelBlockSymmetric<false>)->Name("kernel_block_symmetric/serial")->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelBlockSymmetric<true>)->Name("kernel_block_symmetric/omp")->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RffBlock<false>)->Name("rff_block/serial")->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RffBlock<true>)->Name("rff_block/omp")->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

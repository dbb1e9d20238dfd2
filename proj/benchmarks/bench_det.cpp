#include <benchmark/benchmark.h>

#include "holodet/blockdet.hpp"
#include "holodet/euler.hpp"
#include "holodet/laplacian.hpp"
#include "holodet/vectorfields.hpp"

using namespace holodet;

namespace {

TwistedLaplacian<GaussianRational> random_lap(std::uint64_t seed, int p, int edges, int max_rank) {
  RandomSpec spec;
  spec.seed = seed;
  spec.p = p;
  spec.max_edges = edges;
  spec.max_rank = max_rank;
  spec.max_total_rank = 7;
  spec.cover = true;
  return build_laplacian(gen_random(spec));
}

void BM_Oracle(benchmark::State& state) {
  auto lap = random_lap(1, 4, 6, 3);
  for (auto _ : state) benchmark::DoNotOptimize(det_oracle(lap.matrix.base()));
}
BENCHMARK(BM_Oracle);

void BM_BlockCycles(benchmark::State& state) {
  auto lap = random_lap(1, 4, 6, 3);
  for (auto _ : state) benchmark::DoNotOptimize(det_scalar_diag(lap.matrix));
}
BENCHMARK(BM_BlockCycles);

void BM_QuiverCycles(benchmark::State& state) {
  auto lap = random_lap(1, 4, 6, 3);
  FoldOptions opts;
  opts.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(det_laplacian_cycles(lap, opts));
}
BENCHMARK(BM_QuiverCycles)->Arg(0)->Arg(1);

void BM_VectorFields(benchmark::State& state) {
  auto lap = random_lap(1, 4, 6, 3);
  for (auto _ : state) benchmark::DoNotOptimize(det_vector_fields(lap));
}
BENCHMARK(BM_VectorFields);

void BM_VectorFieldsBeta(benchmark::State& state) {
  auto lap = random_lap(1, 4, 6, 3);
  for (auto _ : state) benchmark::DoNotOptimize(det_vector_fields_variant(lap, VectorFieldVariant::Beta));
}
BENCHMARK(BM_VectorFieldsBeta);

void BM_SymbolicCycles(benchmark::State& state) {
  RandomSpec spec;
  spec.seed = 3;
  spec.p = 3;
  spec.max_edges = 5;
  spec.max_rank = 2;
  spec.cover = true;
  IndeterminateSet symbols;
  auto lap = build_laplacian(with_symbolic_weights(gen_random(spec), symbols));
  for (auto _ : state) benchmark::DoNotOptimize(det_laplacian_cycles(lap));
}
BENCHMARK(BM_SymbolicCycles);

void BM_EulerTruncated(benchmark::State& state) {
  RandomSpec spec;
  spec.p = 4;
  spec.max_edges = 7;
  spec.max_rank = 1;
  spec.cover = true;
  Instance<GaussianRational> exact;
  for (spec.seed = 1;; ++spec.seed) {
    exact = gen_random(spec);
    if (!prime_finiteness(exact.quiver).finite) break;
  }
  auto inst = to_float(exact);
  for (auto& u : inst.rep.matrices) u(0, 0) = std::abs(u(0, 0)) == 0.0 ? 1.0 : u(0, 0) / std::abs(u(0, 0));
  // Rows of P sum to 1/4.
  auto z = vertex_z(inst.quiver, inst.weights);
  for (int e = 0; e < inst.quiver.edge_count(); ++e) {
    inst.weights[static_cast<std::size_t>(e)] /= 4.0 * z[static_cast<std::size_t>(inst.quiver.src(e))].real();
  }
  auto lap = build_laplacian(inst);
  std::vector<double> kappa(z.size(), 0.75);
  for (auto _ : state) benchmark::DoNotOptimize(det_euler_truncated(lap, kappa));
}
BENCHMARK(BM_EulerTruncated);

}  // namespace
BENCHMARK_MAIN();

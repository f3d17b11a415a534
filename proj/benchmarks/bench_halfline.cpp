#include <benchmark/benchmark.h>

#include "halfline/calderon.hpp"
#include "halfline/evolution.hpp"
#include "halfline/indices.hpp"
#include "halfline/models.hpp"
#include "halfline/rng.hpp"
#include "halfline/spectral.hpp"
#include "halfline/subspace.hpp"
#include "halfline/verify.hpp"

namespace {

using namespace halfline;

void bm_eigendecompose(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  DiracData d = random_system(dim, 0, 7);
  for (auto _ : state) {
    SpectralDecomposition dec = eigendecompose(d);
    benchmark::DoNotOptimize(dec.eigenvalues);
  }
}
BENCHMARK(bm_eigendecompose)->Arg(8)->Arg(32)->Arg(128);

void bm_pair_report(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  Rng rng(11);
  Subspace a = random_subspace(dim, dim / 2, rng);
  Subspace b = random_subspace(dim, dim / 2, rng);
  for (auto _ : state) {
    PairReport rep = pair_report(a, b);
    benchmark::DoNotOptimize(rep.index);
  }
}
BENCHMARK(bm_pair_report)->Arg(8)->Arg(32)->Arg(128);

void bm_fundamental_solution(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  DiracData d = random_system(dim, 0, 13);
  CoefficientPath path = random_coupled_path(d, 0.5, 1.0, 17);
  for (auto _ : state) {
    FundamentalSolution sol = fundamental_solution(path, 512);
    benchmark::DoNotOptimize(sol.phi_r);
  }
}
BENCHMARK(bm_fundamental_solution)->Arg(8)->Arg(16)->Arg(32);

void bm_calderon_subspaces(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  DiracData d = random_system(dim, 0, 19);
  CoefficientPath path = random_coupled_path(d, 0.5, 1.0, 23);
  for (auto _ : state) {
    CalderonPair cp = calderon_subspaces(path, {512, 16});
    benchmark::DoNotOptimize(cp.duality_residual);
  }
}
BENCHMARK(bm_calderon_subspaces)->Arg(8)->Arg(16)->Arg(32);

void bm_ext_index(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  DiracData d = random_system(dim, 2, 29);
  CalderonPair cp = constant_calderon(d);
  BoundaryCondition b = aps_condition(d, 0.0, true);
  for (auto _ : state) {
    IndexReport rep = ext_index(d, b, cp);
    benchmark::DoNotOptimize(rep.index);
  }
}
BENCHMARK(bm_ext_index)->Arg(8)->Arg(32)->Arg(128);

void bm_decay_scan(benchmark::State& state) {
  int K = static_cast<int>(state.range(0));
  CoefficientPath path = cylinder_family(K, 0.5, 1.0);
  CalderonPair cp = calderon_subspaces(path, {1024, 16});
  SpectralDecomposition dec = eigendecompose(path.d);
  std::vector<double> lambdas = {2.0, 3.0, 4.0, static_cast<double>(K) / 2};
  std::vector<double> weights = {0.0};
  for (auto _ : state) {
    auto rows = decay_scan(cp.c_ext, dec, lambdas, weights);
    benchmark::DoNotOptimize(rows.size());
  }
}
BENCHMARK(bm_decay_scan)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <vector>

#include "cutlim/cut_densities.hpp"
#include "cutlim/cut_metrics.hpp"
#include "cutlim/homomorphism.hpp"
#include "cutlim/linalg.hpp"
#include "cutlim/noise_lab.hpp"
#include "cutlim/qp_relax.hpp"
#include "cutlim/rng.hpp"

using namespace cutlim;

namespace {

WeightedGraph random_graph(std::size_t n, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<double> alpha(n);
  Matrix beta(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = 0.5 + rng.uniform();
    for (std::size_t j = i; j < n; ++j) beta(i, j) = beta(j, i) = rng.uniform();
  }
  return WeightedGraph(alpha, beta);
}

Matrix wigner(std::size_t n) {
  NoiseSpec s;
  s.distribution = NoiseSpec::Distribution::Rademacher;
  s.K = 1.0;
  s.seed = 1;
  return gen_wigner(n, s);
}

}  // namespace

static void BM_CutNormExact(benchmark::State& state) {
  const auto w = StepfunctionGraphon::uniform(wigner(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(cutnorm_exact(w).value);
}
BENCHMARK(BM_CutNormExact)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);

static void BM_CutNormHeuristic(benchmark::State& state) {
  const auto w = StepfunctionGraphon::uniform(wigner(static_cast<std::size_t>(state.range(0))));
  const SeededRng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(cutnorm_heuristic(w, 32, rng).value);
}
BENCHMARK(BM_CutNormHeuristic)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

static void BM_MinCutDensity(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 3);
  const int q = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(min_cut_density(g, q, BalanceSpec::c_balanced(0.5 / q)).value);
}
BENCHMARK(BM_MinCutDensity)->Args({12, 2})->Args({16, 2})->Args({20, 2})->Args({10, 3})->Args({12, 3})
    ->Unit(benchmark::kMillisecond);

static void BM_HomDensity(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 4);
  const auto f = SimpleGraph::complete(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(hom_density(f, g));
}
BENCHMARK(BM_HomDensity)->Args({16, 3})->Args({16, 4})->Args({32, 4})->Args({16, 5})->Unit(benchmark::kMillisecond);

static void BM_QpSolve(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 5);
  const QPProblem p(g, 3, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(solve(p, SolveOptions{}, SeededRng(6)).report.objective);
}
BENCHMARK(BM_QpSolve)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_JacobiEigen(benchmark::State& state) {
  const auto a = wigner(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigen(a, state.range(1) != 0).values.front());
}
BENCHMARK(BM_JacobiEigen)->Args({64, 0})->Args({64, 1})->Args({128, 1})->Args({256, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

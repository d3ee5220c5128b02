// Serial reference vs OpenMP kernels, plus the trial loop of one recovery run.
#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "gsamp/chebyshev.hpp"
#include "gsamp/experiment.hpp"
#include "gsamp/kernels.hpp"

namespace {

using namespace gsamp;

const VariationOperator& sensor_op(Index n) {
  static std::map<Index, VariationOperator> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, normalized_laplacian(gen_random_sensor(n, 7))).first;
  return it->second;
}

template <bool Parallel>
void BM_symv(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix& a = sensor_op(n).matrix;
  const Vector x = Vector::LinSpaced(n, -1.0, 1.0);
  Vector y(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::symv(a, {x.data(), static_cast<std::size_t>(n)}, {y.data(), static_cast<std::size_t>(n)});
    else
      kernels::serial::symv(a, {x.data(), static_cast<std::size_t>(n)}, {y.data(), static_cast<std::size_t>(n)});
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}

template <bool Parallel>
void BM_chebyshev(benchmark::State& state) {
  const Index n = state.range(0);
  const VariationOperator& op = sensor_op(n);
  const ChebyshevFilter cf = chebyshev_fit([](double l) { return std::exp(-2.0 * l); }, 0.0, 2.0,
                                           static_cast<int>(state.range(1)));
  const Vector x = Vector::LinSpaced(n, -1.0, 1.0);
  Vector y(n);
  const kernels::ChebyshevPlan plan{cf.coeffs, cf.center(), cf.half_width()};
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::chebyshev(op.matrix, plan, {x.data(), static_cast<std::size_t>(n)},
                                   {y.data(), static_cast<std::size_t>(n)});
    else
      kernels::serial::chebyshev(op.matrix, plan, {x.data(), static_cast<std::size_t>(n)},
                                 {y.data(), static_cast<std::size_t>(n)});
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_recovery_trials(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.trials = 200;
  cfg.per_trial = false;
  cfg.parallel = state.range(0) != 0;
  static const SpectralBasis basis = eigendecompose(combinatorial_laplacian(gen_random_sensor(256, 1)));
  for (auto _ : state) benchmark::DoNotOptimize(run_recovery_experiment(cfg, basis));
}

}  // namespace

BENCHMARK(BM_symv<false>)->Name("symv/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_symv<true>)->Name("symv/parallel")->Arg(256)->Arg(1024);
BENCHMARK(BM_chebyshev<false>)->Name("chebyshev/serial")->Args({256, 16})->Args({1024, 32});
BENCHMARK(BM_chebyshev<true>)->Name("chebyshev/parallel")->Args({256, 16})->Args({1024, 32});
BENCHMARK(BM_recovery_trials)->Name("recovery_trials/serial")->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_recovery_trials)->Name("recovery_trials/parallel")->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

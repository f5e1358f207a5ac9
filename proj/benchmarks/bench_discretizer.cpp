#include <benchmark/benchmark.h>

#include <random>

#include "lincls/discretizer.hpp"

namespace {

using namespace lincls;

void mdlp_column(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<double> v(n);
  std::vector<ClassIndex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = unit(rng);
    y[i] = static_cast<ClassIndex>(v[i] * 3 + 0.3 * unit(rng)) % 3;
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_mdlp(v, y).thresholds.size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void efd_column(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(5);
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(rng() % 1000);
  for (auto _ : state) benchmark::DoNotOptimize(fit_efd(v, 10).thresholds.size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(mdlp_column)->Arg(1000)->Arg(100000);
BENCHMARK(efd_column)->Arg(1000)->Arg(100000);

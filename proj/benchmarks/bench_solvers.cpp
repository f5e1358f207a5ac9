#include <benchmark/benchmark.h>

#include "lincls/objectives.hpp"
#include "lincls/solvers.hpp"
#include "lincls/synthetic.hpp"

namespace {

using namespace lincls;

void solve_band(benchmark::State& state) {
  const auto d = synth_band2d(5000, 3);
  const auto layout = ParameterLayout::softmax(d.schema());
  const NllObjective f(layout, d, {ObjectiveKind::nll, 0.1, false});
  const std::vector<double> x0(layout.size(), 0.0);
  SolverConfig cfg;
  cfg.kind = static_cast<SolverKind>(state.range(0));
  cfg.max_epochs = 10;
  for (auto _ : state) benchmark::DoNotOptimize(minimize(f, x0, cfg).value);
  state.SetLabel(std::string(to_string(cfg.kind)));
}

}  // namespace

BENCHMARK(solve_band)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

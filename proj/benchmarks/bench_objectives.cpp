#include <benchmark/benchmark.h>

#include <random>

#include "lincls/objectives.hpp"
#include "lincls/preprocess.hpp"
#include "lincls/synthetic.hpp"

namespace {

using namespace lincls;

Dataset mixed(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0, 1);
  Schema s({Attribute::quantitative("a"), Attribute::quantitative("b"),
            Attribute::qualitative("c", {"x", "y", "z", "w"}),
            Attribute::qualitative("d", {"p", "q", "r"})},
           "class", {"k0", "k1", "k2"});
  std::vector<double> cells;
  std::vector<ClassIndex> y;
  for (std::size_t i = 0; i < n; ++i) {
    cells.insert(cells.end(), {unit(rng), unit(rng), static_cast<double>(rng() % 4),
                               static_cast<double>(rng() % 3)});
    y.push_back(static_cast<ClassIndex>(rng() % 3));
  }
  return Dataset(s, cells, y);
}

template <typename Objective>
void eval_gradient(benchmark::State& state) {
  const auto d = mixed(static_cast<std::size_t>(state.range(0)));
  const auto layout = ParameterLayout::softmax(d.schema());
  const Objective f(layout, d, {ObjectiveKind::nll, 0.1, false});
  std::vector<double> x(f.dimension(), 0.1), g(f.dimension());
  for (auto _ : state) benchmark::DoNotOptimize(f.evaluate(x, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void nll_hessian_vec(benchmark::State& state) {
  const auto d = mixed(static_cast<std::size_t>(state.range(0)));
  const auto layout = ParameterLayout::softmax(d.schema());
  const NllObjective f(layout, d, {ObjectiveKind::nll, 0.1, false});
  std::vector<double> x(f.dimension(), 0.1), v(f.dimension(), 1.0), out(f.dimension());
  for (auto _ : state) {
    f.hessian_vec(x, v, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void hinge_gradient(benchmark::State& state) {
  const auto d = binarize_majority(mixed(static_cast<std::size_t>(state.range(0))));
  const auto layout = ParameterLayout::single_block(d.schema());
  const HingeObjective f(layout, d, 0, {ObjectiveKind::hinge, 1.0, false});
  std::vector<double> x(f.dimension(), 0.1), g(f.dimension());
  for (auto _ : state) benchmark::DoNotOptimize(f.evaluate(x, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(eval_gradient<lincls::NllObjective>)->Arg(1000)->Arg(100000);
BENCHMARK(eval_gradient<lincls::MseObjective>)->Arg(1000)->Arg(100000);
BENCHMARK(nll_hessian_vec)->Arg(1000)->Arg(100000);
BENCHMARK(hinge_gradient)->Arg(1000)->Arg(100000);

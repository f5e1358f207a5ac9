#include "lincls/synthetic.hpp"

#include <random>
#include <stdexcept>

namespace lincls {

namespace {

template <class Rule>
Dataset make_2d(std::size_t n, std::uint64_t seed, const char* relation, Rule positive) {
  if (n == 0) throw std::invalid_argument("need at least one instance");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> cells;
  cells.reserve(2 * n);
  std::vector<ClassIndex> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = unit(rng);
    const double x2 = unit(rng);
    cells.push_back(x1);
    cells.push_back(x2);
    labels.push_back(positive(x1, x2) ? 1 : 0);
  }
  Schema schema({Attribute::quantitative("x1"), Attribute::quantitative("x2")}, "class",
                {"negative", "positive"}, relation);
  return Dataset(std::move(schema), std::move(cells), std::move(labels));
}

bool middle_third(double v) { return v > 1.0 / 3.0 && v < 2.0 / 3.0; }

}  // namespace

Dataset synth_band2d(std::size_t n, std::uint64_t seed) {
  return make_2d(n, seed, "band2d",
                 [](double x1, double x2) { return middle_third(x1) && middle_third(x2); });
}

Dataset synth_xor2d(std::size_t n, std::uint64_t seed) {
  return make_2d(n, seed, "xor2d", [](double x1, double x2) { return (x1 > 0.5) != (x2 > 0.5); });
}

}  // namespace lincls

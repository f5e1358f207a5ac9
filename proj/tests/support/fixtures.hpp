#pragma once

#include <random>
#include <vector>

#include "lincls/dataset.hpp"
#include "lincls/layout.hpp"

namespace lincls::testing {

/// Three quantitative and two three-valued qualitative attributes, three
/// classes. Labels are sampled from a softmax model whose weights are drawn
/// from N(0, weight_scale^2).
inline Dataset logistic_fixture(std::size_t n, std::uint64_t seed, double weight_scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  Schema schema({Attribute::quantitative("q0"), Attribute::quantitative("q1"),
                 Attribute::quantitative("q2"), Attribute::qualitative("c0", {"a", "b", "c"}),
                 Attribute::qualitative("c1", {"a", "b", "c"})},
                "class", {"y0", "y1", "y2"});
  const auto layout = ParameterLayout::softmax(schema);
  std::normal_distribution<double> normal(0, weight_scale);
  std::vector<double> beta(layout.size());
  for (auto& b : beta) b = normal(rng);

  std::vector<double> cells;
  std::vector<ClassIndex> labels;
  for (std::size_t r = 0; r < n; ++r) {
    const std::vector<double> x{unit(rng), unit(rng), unit(rng), static_cast<double>(rng() % 3),
                                static_cast<double>(rng() % 3)};
    const auto p = softmax_predict(layout, beta, x);
    double u = unit(rng);
    ClassIndex y = 0;
    while (y + 1 < p.size() && u > p[y]) u -= p[y++];
    cells.insert(cells.end(), x.begin(), x.end());
    labels.push_back(y);
  }
  return Dataset(schema, cells, labels);
}

}  // namespace lincls::testing

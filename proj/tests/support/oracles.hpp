#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "lincls/dataset.hpp"
#include "lincls/function.hpp"

namespace lincls::testing {

/// Central differences of f.value at step h.
inline std::vector<double> fd_gradient(const DifferentiableFunction& f, std::span<const double> x,
                                       double h = 1e-5) {
  std::vector<double> g(x.size());
  std::vector<double> p(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = p[i];
    p[i] = orig + h;
    const double fp = f.value(p);
    p[i] = orig - h;
    const double fm = f.value(p);
    p[i] = orig;
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

/// (grad f(x + h v) - grad f(x - h v)) / 2h
inline std::vector<double> fd_hessian_vec(const DifferentiableFunction& f, std::span<const double> x,
                                          std::span<const double> v, double h = 1e-5) {
  std::vector<double> p(x.begin(), x.end()), m(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] += h * v[i];
    m[i] -= h * v[i];
  }
  std::vector<double> gp(x.size()), gm(x.size()), out(x.size());
  f.evaluate(p, gp);
  f.evaluate(m, gm);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (gp[i] - gm[i]) / (2 * h);
  return out;
}

/// max_i |a_i - b_i| / max(1, max_i |b_i|)
inline double relative_error(std::span<const double> a, std::span<const double> b) {
  double diff = 0, scale = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return diff / scale;
}

/// Shannon entropy in bits from a label list.
inline double entropy_of(const std::vector<ClassIndex>& labels) {
  std::map<ClassIndex, double> counts;
  for (auto y : labels) counts[y] += 1;
  double h = 0;
  for (const auto& [y, c] : counts) {
    const double p = c / static_cast<double>(labels.size());
    h -= p * std::log2(p);
  }
  return h;
}

inline double distinct_count(const std::vector<ClassIndex>& labels) {
  std::vector<ClassIndex> v = labels;
  std::sort(v.begin(), v.end());
  return static_cast<double>(std::unique(v.begin(), v.end()) - v.begin());
}

struct BruteSplit {
  bool has_candidate = false;
  bool accepted = false;
  double cut = 0;
  double gain = 0;
  double threshold = 0;
  bool unique_best = true;
};

/// Tries every midpoint between adjacent distinct values, keeps the highest
/// information gain, and evaluates the MDL acceptance inequality.
inline BruteSplit brute_force_mdlp(const std::vector<double>& values,
                                   const std::vector<ClassIndex>& labels) {
  std::vector<double> distinct = values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  BruteSplit best;
  const double n = static_cast<double>(values.size());
  const double ent = entropy_of(labels);
  for (std::size_t i = 1; i < distinct.size(); ++i) {
    const double cut = distinct[i - 1] + (distinct[i] - distinct[i - 1]) / 2.0;
    std::vector<ClassIndex> left, right;
    for (std::size_t j = 0; j < values.size(); ++j) {
      (values[j] < cut ? left : right).push_back(labels[j]);
    }
    const double e1 = entropy_of(left), e2 = entropy_of(right);
    const double gain = ent - (static_cast<double>(left.size()) * e1 +
                               static_cast<double>(right.size()) * e2) / n;
    if (best.has_candidate && std::abs(gain - best.gain) <= 1e-12) best.unique_best = false;
    if (!best.has_candidate || gain > best.gain + 1e-12) {
      best.has_candidate = true;
      best.unique_best = true;
      best.cut = cut;
      best.gain = gain;
      const double k = distinct_count(labels), k1 = distinct_count(left),
                   k2 = distinct_count(right);
      best.threshold =
          (std::log2(n - 1) + std::log2(std::pow(3.0, k) - 2) - (k * ent - k1 * e1 - k2 * e2)) / n;
    }
  }
  best.accepted = best.has_candidate && best.gain > best.threshold;
  return best;
}

/// Exact two-tailed sign test via Pascal's triangle (n <= 60 stays exact in
/// long double).
inline double sign_test_enumerated(std::size_t wins, std::size_t losses) {
  const std::size_t n = wins + losses;
  if (n == 0) return 1;
  std::vector<long double> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long double> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  long double tail = 0;
  for (std::size_t j = 0; j <= std::min(wins, losses); ++j) tail += row[j];
  const long double p = 2 * tail / std::pow(2.0L, static_cast<long double>(n));
  return static_cast<double>(std::min<long double>(1, p));
}

/// Random mixed dataset: `quant` uniform [0,1] attributes and `qual`
/// attributes with `card` categories, labels from a noisy linear rule.
inline Dataset random_mixed_dataset(std::size_t n, std::size_t quant, std::size_t qual,
                                    std::size_t card, std::size_t classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<Attribute> attrs;
  for (std::size_t i = 0; i < quant; ++i) attrs.push_back(Attribute::quantitative("q" + std::to_string(i)));
  for (std::size_t i = 0; i < qual; ++i) {
    std::vector<std::string> values;
    for (std::size_t j = 0; j < card; ++j) values.push_back("v" + std::to_string(j));
    attrs.push_back(Attribute::qualitative("c" + std::to_string(i), values));
  }
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < classes; ++c) labels.push_back("y" + std::to_string(c));
  Schema schema(attrs, "class", labels);
  std::vector<double> cells;
  std::vector<ClassIndex> ys;
  for (std::size_t r = 0; r < n; ++r) {
    double s = 0;
    for (std::size_t i = 0; i < quant; ++i) {
      const double v = unit(rng);
      cells.push_back(v);
      s += (i % 2 ? -1.0 : 1.0) * v;
    }
    for (std::size_t i = 0; i < qual; ++i) {
      const auto v = static_cast<std::size_t>(unit(rng) * static_cast<double>(card)) % card;
      cells.push_back(static_cast<double>(v));
      s += 0.3 * static_cast<double>(v);
    }
    s += 0.5 * (unit(rng) - 0.5);
    auto y = static_cast<ClassIndex>(std::clamp(s + 0.5, 0.0, 0.999999) * static_cast<double>(classes));
    ys.push_back(std::min<ClassIndex>(y, static_cast<ClassIndex>(classes - 1)));
  }
  // Make sure every class occurs.
  for (std::size_t c = 0; c < classes && c < n; ++c) ys[c] = static_cast<ClassIndex>(c);
  return Dataset(std::move(schema), std::move(cells), std::move(ys));
}

}  // namespace lincls::testing

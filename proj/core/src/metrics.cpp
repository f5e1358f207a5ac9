#include "lincls/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lincls {

double zero_one_loss(std::span<const ClassIndex> predicted, std::span<const ClassIndex> truth) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("length mismatch");
  if (truth.empty()) throw std::invalid_argument("no predictions");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) wrong += predicted[i] != truth[i];
  return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

double rmse(std::span<const double> probabilities, std::span<const ClassIndex> truth,
            std::size_t num_classes) {
  if (truth.empty() || num_classes == 0) throw std::invalid_argument("no predictions");
  if (probabilities.size() != truth.size() * num_classes) {
    throw std::invalid_argument("probability matrix has the wrong shape");
  }
  double sum = 0;
  for (std::size_t l = 0; l < truth.size(); ++l) {
    for (std::size_t c = 0; c < num_classes; ++c) {
      const double e = (c == truth[l] ? 1.0 : 0.0) - probabilities[l * num_classes + c];
      sum += e * e;
    }
  }
  return std::sqrt(sum / static_cast<double>(truth.size() * num_classes));
}

BVResult bias_variance_from_tallies(std::vector<std::vector<std::size_t>> tallies,
                                    std::span<const ClassIndex> truth) {
  if (tallies.size() != truth.size()) throw std::invalid_argument("length mismatch");
  if (truth.empty()) throw std::invalid_argument("no instances");
  BVResult out;
  std::size_t counted = 0;
  for (std::size_t l = 0; l < truth.size(); ++l) {
    const auto& t = tallies[l];
    double total = 0;
    for (auto v : t) total += static_cast<double>(v);
    if (total == 0) continue;
    if (truth[l] >= t.size()) throw std::invalid_argument("label outside tally range");
    double bias = 0, sum_sq = 0;
    for (std::size_t c = 0; c < t.size(); ++c) {
      const double p = static_cast<double>(t[c]) / total;
      const double e = (c == truth[l] ? 1.0 : 0.0) - p;
      bias += e * e;
      sum_sq += p * p;
    }
    out.bias += 0.5 * bias;
    out.variance += 0.5 * (1.0 - sum_sq);
    ++counted;
  }
  if (counted == 0) throw std::invalid_argument("no instance has any prediction");
  out.bias /= static_cast<double>(counted);
  out.variance /= static_cast<double>(counted);
  out.tallies = std::move(tallies);
  return out;
}

double sign_test(std::size_t wins, std::size_t losses) {
  const std::size_t n = wins + losses;
  if (n == 0) return 1.0;
  const std::size_t k = std::min(wins, losses);
  // The lower tail reaches one half once it covers the median.
  if (2 * k + 1 >= n) return 1.0;
  // Sum of binomial(n, j) 2^-n in log space, largest term last.
  const double log_half_n = static_cast<double>(n) * std::log(0.5);
  const double lg_n1 = std::lgamma(static_cast<double>(n) + 1);
  double tail = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    const double lc = lg_n1 - std::lgamma(static_cast<double>(j) + 1) -
                      std::lgamma(static_cast<double>(n - j) + 1);
    tail += std::exp(lc + log_half_n);
  }
  return std::min(1.0, 2.0 * tail);
}

WDLRecord wdl_compare(std::span<const double> a, std::span<const double> b, double tie_tol) {
  if (a.size() != b.size()) throw std::invalid_argument("result lists differ in length");
  if (!(tie_tol >= 0)) throw std::invalid_argument("tie tolerance must be non-negative");
  WDLRecord r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) <= tie_tol) {
      ++r.draws;
    } else if (a[i] < b[i]) {
      ++r.wins;
    } else {
      ++r.losses;
    }
  }
  r.p_value = sign_test(r.wins, r.losses);
  return r;
}

}  // namespace lincls
